#ifndef SSEPFREE_TOOLS_OUTPUT_HPP
#define SSEPFREE_TOOLS_OUTPUT_HPP

#include <string>

#include <json.hpp>

#include "ssepfree/numbers.hpp"

namespace ssepfree::cli {

using Json = nlohmann::ordered_json;

/// Indented JSON with every floating-point number printed to 17 significant
/// digits; non-finite numbers become null.
std::string dump_json(const Json& j);

/// Integer if it fits in 64 bits, decimal string otherwise.
Json big(const BigInt& v);

/// Writes atomically to path, or to stdout for "" or "-".
void emit(const std::string& text, const std::string& path);

}  // namespace ssepfree::cli

#endif
