#include "commands.hpp"

#include <algorithm>
#include <cmath>
#include <memory>
#include <numeric>
#include <sstream>

#include <spdlog/spdlog.h>

#include "output.hpp"
#include "ssepfree/bernoulli.hpp"
#include "ssepfree/cumulants.hpp"
#include "ssepfree/errors.hpp"
#include "ssepfree/freeprob.hpp"
#include "ssepfree/graphs.hpp"
#include "ssepfree/io.hpp"
#include "ssepfree/partitions.hpp"
#include "ssepfree/scaling.hpp"
#include "ssepfree/ssep.hpp"
#include "ssepfree/verification.hpp"

namespace ssepfree::cli {

namespace {

std::string format_or(const Globals& g, const char* fallback) { return g.format.empty() ? fallback : g.format; }

Json array_of(const GridFunction& f) {
    Json a = Json::array();
    for (double v : f.values()) a.push_back(v);
    return a;
}

template <class T>
Json array_of(const std::vector<T>& v) {
    Json a = Json::array();
    for (const auto& x : v) a.push_back(x);
    return a;
}

std::string rational_string(const Rational& r) {
    std::ostringstream os;
    os << r;
    return os.str();
}

GridFunction load_grid(const std::string& path, const std::string& column) {
    return grid_from_csv(parse_csv(read_file(path)), column);
}

std::string join_ints(const std::vector<int>& v, const char* sep) {
    std::string out;
    for (std::size_t i = 0; i < v.size(); ++i) out += (i ? sep : "") + std::to_string(v[i]);
    return out;
}

std::vector<int> parse_index_list(const std::string& s) {
    std::vector<int> out;
    std::stringstream ss(s);
    std::string item;
    while (std::getline(ss, item, ',')) {
        try {
            std::size_t used = 0;
            int v = std::stoi(item, &used);
            if (used != item.size()) throw std::invalid_argument(item);
            out.push_back(v);
        } catch (const std::exception&) {
            throw ValidationError("invalid index list '" + s + "'");
        }
    }
    if (out.empty()) throw ValidationError("empty index list");
    return out;
}

struct SolverFlags {
    double tolerance = 1e-10;
    long max_iterations = 10000;
    double damping = 0.5;

    void add(CLI::App* sub) {
        sub->add_option("--tolerance", tolerance, "Fixed-point tolerance (sup norm)")->check(CLI::PositiveNumber)->capture_default_str();
        sub->add_option("--max-iterations", max_iterations, "Iteration cap")->check(CLI::PositiveNumber)->capture_default_str();
        sub->add_option("--damping", damping, "Relaxation factor in (0, 1]")->check(CLI::Range(1e-6, 1.0))->capture_default_str();
    }
    SolverOptions options() const { return {damping, tolerance, max_iterations}; }
};

struct KernelFlags {
    std::string kernels = "ssep";
    double g0 = 0.5;
    std::string g0_profile;

    void add(CLI::App* sub) {
        sub->add_option("--kernels", kernels, "Cumulant kernels: ssep, or independent sites with mean g0")
            ->check(CLI::IsMember({"ssep", "independent"}))
            ->capture_default_str();
        sub->add_option("--g0", g0, "Mean of independent sites")->check(CLI::Range(0.0, 1.0))->capture_default_str();
        sub->add_option("--g0-profile", g0_profile, "CSV profile of independent-site means");
    }
    GridFunction mean_profile(int intervals) const {
        if (g0_profile.empty()) return GridFunction::constant(intervals, g0);
        auto p = load_grid(g0_profile, "");
        return p.intervals() == intervals ? p : p.resample(intervals);
    }
};

// --- partitions ----------------------------------------------------------

void add_partitions(CLI::App& app, Globals& g, Action& action) {
    struct Opts {
        int n = 4;
        bool noncrossing = false;
    };
    auto o = std::make_shared<Opts>();
    auto* sub = app.add_subcommand("partitions", "List set partitions of {1..n} with Moebius values to the top element");
    sub->configurable();
    sub->add_option("-n,--n", o->n, "Ground set size")->check(CLI::Range(1, 12))->capture_default_str();
    sub->add_flag("--noncrossing", o->noncrossing, "Non-crossing partitions and their own Moebius function");
    sub->callback([o, &g, &action] {
        action = [o, &g] {
            const int n = o->n;
            const auto list = o->noncrossing ? enumerate_noncrossing(n) : enumerate_partitions(n);
            const auto top = SetPartition::coarsest(n);
            Json j;
            j["n"] = n;
            j["kind"] = o->noncrossing ? "noncrossing" : "all";
            j["count"] = list.size();
            j["expected_count"] = big(o->noncrossing ? catalan(n) : bell(n));
            Json rows = Json::array();
            std::string csv = "partition,mobius\n";
            for (const auto& p : list) {
                BigInt mu = o->noncrossing ? mobius_nc(p, top) : mobius_partition_lattice(p, top);
                rows.push_back({{"blocks", p.to_string()}, {"mobius", big(mu)}});
                csv += "\"" + p.to_string() + "\"," + mu.str() + "\n";
            }
            j["partitions"] = rows;
            emit(format_or(g, "json") == "csv" ? csv : dump_json(j), g.output);
            return 0;
        };
    });
}

// --- graphs --------------------------------------------------------------

void add_graphs(CLI::App& app, Globals& g, Action& action) {
    struct Opts {
        int vertices = 0;
        std::string edges;
        std::string bipartite;
        int sites = 2;
        int max_edges = 4;
        std::string out;
    };
    auto o = std::make_shared<Opts>();
    auto* sub = app.add_subcommand("graphs", "Chromatic polynomials, Moebius values, automorphisms and coverings");
    sub->configurable();
    auto* v = sub->add_option("--vertices", o->vertices, "Vertex count of a simple graph")->check(CLI::Range(1, 16));
    sub->add_option("--edges", o->edges, "Edges as 1-2,2-3,... (1-based)")->needs(v);
    auto* b = sub->add_option("--bipartite", o->bipartite, "JSON file with a tagged bipartite graph");
    v->excludes(b);
    sub->require_subcommand(0, 1);

    auto* en = sub->add_subcommand("enumerate", "Connected chromatic-class graphs over N sites with their weights");
    en->configurable();
    en->add_option("--sites", o->sites, "Number of sites N")->check(CLI::Range(1, 6))->capture_default_str();
    en->add_option("--max-edges", o->max_edges, "Edge budget")->check(CLI::Range(1, 8))->capture_default_str();
    en->add_option("--out", o->out, "Output file (same as the global --output)");
    en->callback([o, &g, &action] {
        action = [o, &g] {
            const bool csv_out = format_or(g, "json") == "csv";
            Json j;
            std::string csv;
            Json rows = Json::array();
            csv = "graph,edges,mobius,automorphisms,weight,covering_sum,tree\n";
            for (const auto& G : enumerate_chromatic_graphs(o->sites, o->max_edges)) {
                const KMonomial key = G.chromatic_key();
                const long aut = automorphism_count(G, true);
                const BigInt mu = black_mobius(G);
                Rational cov = 0;
                for (const auto& c : coverings(G)) cov += c.weight();
                const Rational w(mu, BigInt(aut));
                rows.push_back({{"blacks", G.blacks},
                                {"whites", G.white_tags},
                                {"edges", G.edges},
                                {"key", to_string(key)},
                                {"mobius", big(mu)},
                                {"automorphisms", aut},
                                {"weight", rational_string(w)},
                                {"covering_sum", rational_string(cov)},
                                {"cycle_rank", G.cycle_rank()}});
                csv += to_string(key) + "," + std::to_string(G.edges.size()) + "," + mu.str() + "," + std::to_string(aut) + "," +
                       rational_string(w) + "," + rational_string(cov) + "," + (G.cycle_rank() == 0 ? "1" : "0") + "\n";
            }
            j["sites"] = o->sites;
            j["max_edges"] = o->max_edges;
            j["count"] = rows.size();
            j["graphs"] = rows;
            emit(csv_out ? csv : dump_json(j), o->out.empty() ? g.output : o->out);
            return 0;
        };
    });

    sub->callback([o, &g, &action, sub] {
        if (!sub->get_subcommands().empty()) return;
        action = [o, &g, sub] {
            const bool csv_out = format_or(g, "json") == "csv";
            Json j;
            std::string csv;
            if (sub->count("--vertices")) {
                std::vector<std::pair<int, int>> edges;
                std::stringstream ss(o->edges);
                std::string item;
                while (std::getline(ss, item, ',')) {
                    auto dash = item.find('-');
                    if (dash == std::string::npos) throw ValidationError("edge '" + item + "' must look like u-v");
                    try {
                        edges.push_back({std::stoi(item.substr(0, dash)), std::stoi(item.substr(dash + 1))});
                    } catch (const std::exception&) {
                        throw ValidationError("edge '" + item + "' must look like u-v");
                    }
                }
                const auto G = SimpleGraph::from_edges(o->vertices, edges);
                const auto chi = chromatic_polynomial(G);
                j["vertices"] = o->vertices;
                j["edges"] = G.edges().size();
                j["connected"] = G.is_connected();
                j["chromatic_polynomial"] = chi.to_string();
                j["mobius"] = big(mu_graph(G));
                if (o->vertices <= 10) j["connected_partitions"] = connected_partition_lattice(G).size();
                Json values = Json::array();
                csv = "k,chromatic_value\n";
                for (int k = 1; k <= 5; ++k) {
                    BigInt val = chi.evaluate(BigInt(k));
                    values.push_back(big(val));
                    csv += std::to_string(k) + "," + val.str() + "\n";
                }
                j["chromatic_values_k1_to_5"] = values;
            } else if (sub->count("--bipartite")) {
                const auto G = graph_from_json(read_file(o->bipartite));
                j["graph"] = G.to_string();
                j["connected"] = G.connected();
                j["chromatic_class"] = G.chromatic_class();
                j["mobius"] = big(black_mobius(G));
                j["automorphisms"] = automorphism_count(G, true);
                j["automorphisms_untagged"] = automorphism_count(G, false);
                csv = "covering,eta,automorphisms,weight\n";
                if (G.chromatic_class() && G.connected()) {
                    Rational sum = 0;
                    Json covs = Json::array();
                    for (const auto& c : coverings(G)) {
                        sum += c.weight();
                        covs.push_back({{"graph", c.graph.to_string()},
                                        {"eta", big(c.eta)},
                                        {"automorphisms", c.automorphisms},
                                        {"weight", rational_string(c.weight())}});
                        csv += "\"" + c.graph.to_string() + "\"," + c.eta.str() + "," + std::to_string(c.automorphisms) + "," +
                               rational_string(c.weight()) + "\n";
                    }
                    const Rational direct(black_mobius(G), BigInt(automorphism_count(G, true)));
                    j["coverings"] = covs;
                    j["covering_sum"] = rational_string(sum);
                    j["mobius_over_automorphisms"] = rational_string(direct);
                    j["identity_holds"] = sum == direct;
                }
            } else {
                throw ValidationError("graphs needs --vertices, --bipartite or the enumerate subcommand");
            }
            emit(csv_out ? csv : dump_json(j), g.output);
            return 0;
        };
    });
}

// --- cumulants -----------------------------------------------------------

void add_cumulants(CLI::App& app, Globals& g, Action& action) {
    struct Opts {
        std::string model;
        std::vector<std::string> indices;
    };
    auto o = std::make_shared<Opts>();
    auto* sub = app.add_subcommand("cumulants", "Non-coincident cumulants of a Bernoulli model");
    sub->configurable();
    sub->add_option("--model", o->model, "Model JSON file")->required();
    sub->add_option("--indices", o->indices, "Multiset of sites such as 1,1,2 to rebuild from non-coincident cumulants")
        ->take_all();
    sub->callback([o, &g, &action] {
        action = [o, &g] {
            const auto model = model_from_json(read_file(o->model));
            const auto table = noncoincident_cumulants(model);
            Json j;
            j["N"] = model.sites();
            Json rows = Json::array();
            std::string csv = "sites,value\n";
            for (const auto& [key, value] : table.entries()) {
                rows.push_back({{"sites", array_of(key)}, {"value", value}});
                csv += join_ints(key, " ") + "," + format_number(value) + "\n";
            }
            j["cumulants"] = rows;
            if (!o->indices.empty()) {
                MomentTable moments([&](const std::vector<int>& key) { return model.moment(key); });
                Json rec = Json::array();
                for (const auto& s : o->indices) {
                    const auto idx = parse_index_list(s);
                    const double r = reconstruct_coincident_cumulant(table, model.sites(), idx);
                    rec.push_back({{"indices", array_of(idx)}, {"reconstructed", r}, {"direct", moments_to_cumulants(moments, idx)}});
                    csv += join_ints(idx, " ") + "," + format_number(r) + "\n";
                }
                j["coincident"] = rec;
            }
            emit(format_or(g, "json") == "csv" ? csv : dump_json(j), g.output);
            return 0;
        };
    });
}

// --- expand --------------------------------------------------------------

void add_expand(CLI::App& app, Globals& g, Action& action) {
    struct Opts {
        std::string model;
        int degree = 4;
        std::string method = "all";
        std::vector<double> field;
    };
    auto o = std::make_shared<Opts>();
    auto* sub = app.add_subcommand("expand", "Series of log Z in e_i = exp(h_i) - 1 from graph sums and from the exact law");
    sub->configurable();
    sub->add_option("--model", o->model, "Model JSON file")->required();
    sub->add_option("--degree", o->degree, "Truncation degree")->check(CLI::Range(1, kMaxExpansionDegree))->capture_default_str();
    sub->add_option("--method", o->method, "chromatic, feynman, taylor or all")
        ->check(CLI::IsMember({"chromatic", "feynman", "taylor", "all"}))
        ->capture_default_str();
    sub->add_option("--field", o->field, "Field h_1,...,h_N at which to compare the truncated series with log Z")->delimiter(',');
    sub->callback([o, &g, &action] {
        action = [o, &g] {
            const auto model = model_from_json(read_file(o->model));
            const int N = model.sites();
            if (N > kMaxExpansionSites) throw SizeLimitError("expansions support N <= 6");
            const auto table = noncoincident_cumulants(model);
            std::vector<std::pair<std::string, ExpansionSeries>> series;
            if (o->method == "chromatic" || o->method == "all") series.push_back({"chromatic", graph_expansion_W(table, N, o->degree)});
            if (o->method == "feynman" || o->method == "all") series.push_back({"feynman", feynman_expansion_W(table, N, o->degree)});
            if (o->method == "taylor" || o->method == "all") series.push_back({"taylor", taylor_expansion_W(model, o->degree)});
            // graded, e1 before e2
            auto graded = [](const std::vector<int>& a, const std::vector<int>& b) {
                const int da = std::accumulate(a.begin(), a.end(), 0), db = std::accumulate(b.begin(), b.end(), 0);
                return da != db ? da < db : a > b;
            };
            std::map<std::vector<int>, bool, decltype(graded)> monomials(graded);
            for (const auto& [name, s] : series)
                for (const auto& [ex, c] : s.terms) monomials[ex] = true;
            Json j;
            j["N"] = N;
            j["degree"] = o->degree;
            j["method"] = o->method;
            Json terms = Json::array();
            std::string csv = "monomial";
            for (const auto& [name, s] : series) csv += "," + (series.size() == 1 ? std::string("coefficient") : name);
            csv += "\n";
            for (const auto& [ex, unused] : monomials) {
                Json t;
                t["monomial"] = monomial_name(ex);
                csv += monomial_name(ex);
                for (const auto& [name, s] : series) {
                    t[series.size() == 1 ? "coefficient" : name] = s.coefficient(ex);
                    csv += "," + format_number(s.coefficient(ex));
                }
                terms.push_back(t);
                csv += "\n";
            }
            j["terms"] = terms;
            if (series.size() > 1) {
                Json diff;
                for (std::size_t a = 0; a < series.size(); ++a)
                    for (std::size_t b = a + 1; b < series.size(); ++b)
                        diff[series[a].first + "_vs_" + series[b].first] = series[a].second.max_difference(series[b].second);
                j["max_coefficient_differences"] = diff;
            }
            if (!o->field.empty()) {
                if (static_cast<int>(o->field.size()) != N) throw ValidationError("--field needs one value per site");
                std::vector<double> e;
                for (double h : o->field) e.push_back(std::expm1(h));
                Json at;
                at["log_partition"] = exact_log_partition(model, o->field);
                for (const auto& [name, s] : series) at[name] = s.evaluate(e);
                j["at_field"] = at;
            }
            emit(format_or(g, "json") == "csv" ? csv : dump_json(j), g.output);
            return 0;
        };
    });
}

// --- free-energy and rate ------------------------------------------------

int run_free_energy(const std::string& path, const std::string& column, const KernelFlags& k, const SolverFlags& s,
                    bool classical, const Globals& g) {
    const auto h = load_grid(path, column);
    spdlog::info("free energy on {} intervals with {} kernels", h.intervals(), k.kernels);
    VariationalSolution sol;
    Json j;
    j["kernels"] = k.kernels;
    j["intervals"] = h.intervals();
    if (k.kernels == "ssep") {
        sol = F_ssep_free(h, s.options());
    } else {
        const auto g0 = k.mean_profile(h.intervals());
        sol = solve_free_energy(h, linear_functional(g0), s.options());
        j["closed_form"] = independent_free_energy(sol.e, g0);
    }
    j["F"] = sol.F;
    j["residual"] = sol.residual;
    j["iterations"] = sol.iterations;
    if (std::isfinite(sol.auxiliary)) j["z"] = sol.auxiliary;
    if (classical) {
        if (k.kernels != "ssep") throw ValidationError("--classical applies to ssep kernels only");
        const auto cl = classical_F_ssep(h);
        j["F_classical"] = cl.F;
        j["relative_difference"] = std::abs(sol.F - cl.F) / std::max(std::abs(cl.F), 1e-8);
    }
    const auto n = sol.density();
    j["g"] = array_of(sol.g);
    j["q"] = array_of(sol.q);
    j["density"] = array_of(n);
    std::string csv = "x,h,g,q,density\n";
    for (int i = 0; i < h.size(); ++i)
        csv += format_number(h.x(i)) + "," + format_number(h[i]) + "," + format_number(sol.g[i]) + "," + format_number(sol.q[i]) +
               "," + format_number(n[i]) + "\n";
    emit(format_or(g, "json") == "csv" ? csv : dump_json(j), g.output);
    return 0;
}

int run_rate(const std::string& path, const std::string& column, const KernelFlags& k, const SolverFlags& s, const Globals& g) {
    const auto n = load_grid(path, column);
    RateSolution r;
    Json j;
    j["kernels"] = k.kernels;
    j["intervals"] = n.intervals();
    if (k.kernels == "ssep") {
        r = rate_function_ssep(n, s.options());
    } else {
        const auto g0 = k.mean_profile(n.intervals());
        r = rate_function(n, linear_functional(g0), s.options());
        j["closed_form"] = independent_rate_function(n, g0);
    }
    j["rate"] = r.value;
    j["residual"] = r.residual;
    j["iterations"] = r.iterations;
    j["g"] = array_of(r.g);
    j["q"] = array_of(r.q);
    j["field"] = array_of(r.field);
    std::string csv = "x,n,g,q,field\n";
    for (int i = 0; i < n.size(); ++i)
        csv += format_number(n.x(i)) + "," + format_number(n[i]) + "," + format_number(r.g[i]) + "," + format_number(r.q[i]) + "," +
               format_number(r.field[i]) + "\n";
    emit(format_or(g, "json") == "csv" ? csv : dump_json(j), g.output);
    return 0;
}

void add_free_energy(CLI::App& app, Globals& g, Action& action) {
    struct Opts {
        std::string h;
        std::string column;
        bool classical = false;
        KernelFlags kernels;
        SolverFlags solver;
    };
    auto o = std::make_shared<Opts>();
    auto* sub = app.add_subcommand("free-energy", "Variational free energy F[h] from a CSV profile h");
    sub->configurable();
    sub->set_help_flag("--help", "Print this help message and exit");
    sub->add_option("--h", o->h, "CSV file with the field profile")->required();
    sub->add_option("--column", o->column, "Column to read (default: 'value' or the last one)");
    sub->add_flag("--classical", o->classical, "Also solve the classical boundary-value problem and compare");
    o->kernels.add(sub);
    o->solver.add(sub);
    sub->callback([o, &g, &action] {
        action = [o, &g] { return run_free_energy(o->h, o->column, o->kernels, o->solver, o->classical, g); };
    });
}

void add_rate(CLI::App& app, Globals& g, Action& action) {
    struct Opts {
        std::string profile;
        std::string column;
        KernelFlags kernels;
        SolverFlags solver;
    };
    auto o = std::make_shared<Opts>();
    auto* sub = app.add_subcommand("rate", "Rate function of a density profile");
    sub->configurable();
    sub->add_option("--profile", o->profile, "CSV file with the density profile")->required();
    sub->add_option("--column", o->column, "Column to read (default: 'value' or the last one)");
    o->kernels.add(sub);
    o->solver.add(sub);
    sub->callback([o, &g, &action] { action = [o, &g] { return run_rate(o->profile, o->column, o->kernels, o->solver, g); }; });
}

// --- verify --------------------------------------------------------------

int run_verify(const std::vector<std::string>& suites, bool serial, bool brief, const Globals& g) {
    const auto results = run_suites(suites, g.seed, !serial);
    int passed = 0;
    for (const auto& r : results) passed += r.passed ? 1 : 0;
    const std::string fmt = format_or(g, "text");
    std::string out;
    if (fmt == "json") {
        Json j;
        j["seed"] = g.seed;
        Json arr = Json::array();
        for (const auto& r : results) {
            Json m = Json::array();
            for (const auto& x : r.measurements)
                m.push_back({{"label", x.label}, {"value", x.value}, {"relation", x.relation}, {"bound", x.bound}, {"passed", x.passed}});
            Json s{{"criterion", r.criterion}, {"suite", r.name}, {"title", r.title}, {"passed", r.passed}, {"measurements", m}};
            if (!r.error.empty()) s["error"] = r.error;
            arr.push_back(s);
        }
        j["suites"] = arr;
        j["passed"] = passed;
        j["total"] = results.size();
        out = dump_json(j);
    } else if (fmt == "csv") {
        out = "criterion,suite,passed,checks_passed,checks\n";
        for (const auto& r : results) {
            long ok = std::count_if(r.measurements.begin(), r.measurements.end(), [](const Measurement& m) { return m.passed; });
            out += std::to_string(r.criterion) + "," + r.name + "," + (r.passed ? "1" : "0") + "," + std::to_string(ok) + "," +
                   std::to_string(r.measurements.size()) + "\n";
        }
    } else {
        char buf[256];
        std::snprintf(buf, sizeof buf, "%-9s %-15s %-6s %9s %7s\n", "criterion", "suite", "result", "seconds", "checks");
        out += buf;
        for (const auto& r : results) {
            long ok = std::count_if(r.measurements.begin(), r.measurements.end(), [](const Measurement& m) { return m.passed; });
            std::snprintf(buf, sizeof buf, "%-9d %-15s %-6s %9.2f %3ld/%-3zu\n", r.criterion, r.name.c_str(), r.passed ? "PASS" : "FAIL",
                          r.seconds, ok, r.measurements.size());
            out += buf;
            if (!brief || !r.passed) out += describe(r);
        }
        std::snprintf(buf, sizeof buf, "passed %d/%zu suites\n", passed, results.size());
        out += buf;
    }
    emit(out, g.output);
    return passed == static_cast<int>(results.size()) ? 0 : 1;
}

void add_verify_options(CLI::App* sub, std::vector<std::string>& suites, bool& serial, bool& brief) {
    std::vector<std::string> allowed = suite_names();
    allowed.push_back("all");
    sub->add_option("--suite", suites, "Suites to run (comma separated), or all")
        ->delimiter(',')
        ->check(CLI::IsMember(allowed))
        ->capture_default_str();
    sub->add_flag("--serial", serial, "Run suites one after another");
    sub->add_flag("--brief", brief, "Summary table only; measurements are shown for failing suites");
}

void add_verify(CLI::App& app, Globals& g, Action& action) {
    struct Opts {
        std::vector<std::string> suites{"all"};
        bool serial = false;
        bool brief = false;
    };
    auto o = std::make_shared<Opts>();
    auto* sub = app.add_subcommand("verify", "Run the acceptance suites against brute-force oracles");
    sub->configurable();
    add_verify_options(sub, o->suites, o->serial, o->brief);
    sub->callback([o, &g, &action] { action = [o, &g] { return run_verify(o->suites, o->serial, o->brief, g); }; });
}

// --- ssep ----------------------------------------------------------------

void add_ssep(CLI::App& app, Globals& g, Action& action) {
    auto* ssep = app.add_subcommand("ssep", "SSEP cumulants, generating functional, rate function and chain statistics");
    ssep->configurable();
    ssep->require_subcommand(1, 1);

    {
        struct Opts {
            int order = 0;
            std::vector<double> points;
            std::string kind = "ssep";
        };
        auto o = std::make_shared<Opts>();
        auto* sub = ssep->add_subcommand("psi", "Scaled connected correlation (ssep) or free cumulant of indicators (sharp)");
        sub->configurable();
        sub->add_option("--order", o->order, "Number of points")->check(CLI::Range(1, kMaxPsiSharpOrder));
        sub->add_option("--points", o->points, "Points in (0,1), comma separated")->delimiter(',')->required();
        sub->add_option("--kind", o->kind, "ssep or sharp")->check(CLI::IsMember({"ssep", "sharp"}))->capture_default_str();
        sub->callback([o, &g, &action] {
            action = [o, &g] {
                if (o->order != 0 && o->order != static_cast<int>(o->points.size()))
                    throw ValidationError("--order does not match the number of points");
                const double v = o->kind == "ssep" ? psi_ssep(o->points) : psi_sharp(o->points);
                Json j{{"kind", o->kind}, {"order", o->points.size()}, {"points", array_of(o->points)}, {"value", v}};
                std::string csv = "kind,order,value\n" + o->kind + "," + std::to_string(o->points.size()) + "," + format_number(v) + "\n";
                emit(format_or(g, "json") == "csv" ? csv : dump_json(j), g.output);
                return 0;
            };
        });
    }
    {
        struct Opts {
            std::string profile;
            std::string column;
            int series = 0;
        };
        auto o = std::make_shared<Opts>();
        auto* sub = ssep->add_subcommand("f0", "Generating functional F0[a] of the SSEP cumulants");
        sub->configurable();
        sub->add_option("--profile", o->profile, "CSV file with a(x)")->required();
        sub->add_option("--column", o->column, "Column to read");
        sub->add_option("--series", o->series, "Also report psi_n[a] for n = 1..series")->check(CLI::Range(0, 10));
        sub->callback([o, &g, &action] {
            action = [o, &g] {
                const auto a = load_grid(o->profile, o->column);
                const auto f = ssep_functional();
                Json j;
                j["intervals"] = a.intervals();
                j["F0"] = f.value(a);
                j["z"] = f.auxiliary(a);
                std::string csv = "quantity,value\nF0," + format_number(j["F0"].get<double>()) + "\nz," +
                                  format_number(j["z"].get<double>()) + "\n";
                if (o->series > 0) {
                    const auto psi = ssep_cumulant_integrals(a, o->series);
                    Json p = Json::array();
                    double partial = 0, fact = 1;
                    for (int n = 1; n <= o->series; ++n) {
                        fact *= n;
                        partial += psi[static_cast<std::size_t>(n)] / fact;
                        p.push_back(psi[static_cast<std::size_t>(n)]);
                        csv += "psi_" + std::to_string(n) + "," + format_number(psi[static_cast<std::size_t>(n)]) + "\n";
                    }
                    j["psi"] = p;
                    j["series_partial_sum"] = partial;
                }
                emit(format_or(g, "json") == "csv" ? csv : dump_json(j), g.output);
                return 0;
            };
        });
    }
    {
        struct Opts {
            std::string profile;
            std::string column;
            SolverFlags solver;
        };
        auto o = std::make_shared<Opts>();
        auto* sub = ssep->add_subcommand("rate", "SSEP rate function of a density profile");
        sub->configurable();
        sub->add_option("--profile", o->profile, "CSV file with n(x)")->required();
        sub->add_option("--column", o->column, "Column to read");
        o->solver.add(sub);
        sub->callback([o, &g, &action] {
            action = [o, &g] { return run_rate(o->profile, o->column, KernelFlags{}, o->solver, g); };
        });
    }
    {
        struct Opts {
            std::vector<std::string> suites{"all"};
            bool serial = false;
            bool brief = false;
        };
        auto o = std::make_shared<Opts>();
        auto* sub = ssep->add_subcommand("verify", "Run acceptance suites (same as the top-level verify)");
        sub->configurable();
        add_verify_options(sub, o->suites, o->serial, o->brief);
        sub->callback([o, &g, &action] { action = [o, &g] { return run_verify(o->suites, o->serial, o->brief, g); }; });
    }
    {
        struct Opts {
            std::string h;
            std::string column;
            SolverFlags solver;
        };
        auto o = std::make_shared<Opts>();
        auto* sub = ssep->add_subcommand("equivalence", "Compare the free-probability and classical free energies for a profile h");
        sub->configurable();
        sub->set_help_flag("--help", "Print this help message and exit");
        sub->add_option("--h", o->h, "CSV file with h(x)")->required();
        sub->add_option("--column", o->column, "Column to read");
        o->solver.add(sub);
        sub->callback([o, &g, &action] {
            action = [o, &g] {
                const auto rep = equivalence_report(load_grid(o->h, o->column), o->solver.options());
                Json j{{"F_free", rep.F_free},
                       {"F_classical", rep.F_classical},
                       {"relative_difference", rep.relative_difference},
                       {"slope_identity_residual", rep.slope_identity_residual},
                       {"pairing_identity_residual", rep.pairing_identity_residual},
                       {"cross_identity_residual", rep.cross_identity_residual},
                       {"ode_residual", rep.ode_residual},
                       {"iterations", rep.iterations},
                       {"z", rep.z}};
                std::string csv = "quantity,value\n";
                for (const auto& [k, v] : j.items()) csv += k + "," + format_number(v.get<double>()) + "\n";
                emit(format_or(g, "json") == "csv" ? csv : dump_json(j), g.output);
                return 0;
            };
        });
    }
    {
        struct Opts {
            int sites = 8;
            double tmax = 1e6;
            std::uint64_t seed = 0;
            int batches = 20;
        };
        auto o = std::make_shared<Opts>();
        auto* sub = ssep->add_subcommand("simulate", "Gillespie simulation of the open chain");
        sub->configurable();
        sub->add_option("--sites", o->sites, "Number of sites")->check(CLI::Range(2, 30))->capture_default_str();
        sub->add_option("--tmax", o->tmax, "Simulated time")->check(CLI::PositiveNumber)->capture_default_str();
        auto* seed_opt = sub->add_option("--seed", o->seed, "Seed (defaults to the global seed)");
        sub->add_option("--batches", o->batches, "Batches for standard errors")->check(CLI::Range(2, 1000))->capture_default_str();
        sub->callback([o, &g, &action, seed_opt] {
            action = [o, &g, seed_opt] {
                const std::uint64_t seed = seed_opt->count() ? o->seed : g.seed;
                const auto st = simulate_ssep(o->sites, o->tmax, seed, o->batches);
                if (st.low_statistics) spdlog::warn("few events per batch; standard errors are unreliable, increase --tmax");
                Json j;
                j["sites"] = o->sites;
                j["tmax"] = o->tmax;
                j["seed"] = seed;
                j["events"] = st.events;
                j["low_statistics"] = st.low_statistics;
                j["mean"] = array_of(st.mean);
                j["standard_error"] = array_of(st.standard_error);
                std::string csv = "site,mean,standard_error";
                std::vector<double> exact;
                if (o->sites <= kMaxExactChainSites) {
                    const auto ss = exact_steady_state(o->sites);
                    for (int i = 1; i <= o->sites; ++i) exact.push_back(ss.mean(i));
                    j["exact_mean"] = array_of(exact);
                    csv += ",exact_mean";
                }
                csv += "\n";
                for (int i = 0; i < o->sites; ++i) {
                    csv += std::to_string(i + 1) + "," + format_number(st.mean[static_cast<std::size_t>(i)]) + "," +
                           format_number(st.standard_error[static_cast<std::size_t>(i)]);
                    if (!exact.empty()) csv += "," + format_number(exact[static_cast<std::size_t>(i)]);
                    csv += "\n";
                }
                emit(format_or(g, "json") == "csv" ? csv : dump_json(j), g.output);
                return 0;
            };
        });
    }
    {
        struct Opts {
            int sites = 8;
        };
        auto o = std::make_shared<Opts>();
        auto* sub = ssep->add_subcommand("exact", "Exact stationary law of the open chain");
        sub->configurable();
        sub->add_option("--sites", o->sites, "Number of sites")->check(CLI::Range(2, kMaxExactChainSites))->capture_default_str();
        sub->callback([o, &g, &action] {
            action = [o, &g] {
                const auto ss = exact_steady_state(o->sites);
                Json j;
                j["sites"] = o->sites;
                std::vector<double> mean;
                for (int i = 1; i <= o->sites; ++i) mean.push_back(ss.mean(i));
                j["mean"] = array_of(mean);
                Json c = Json::array();
                std::string csv = "i,j,connected\n";
                for (int i = 1; i <= o->sites; ++i) {
                    std::vector<double> row;
                    for (int k = 1; k <= o->sites; ++k) {
                        row.push_back(ss.connected(i, k));
                        if (k > i) csv += std::to_string(i) + "," + std::to_string(k) + "," + format_number(ss.connected(i, k)) + "\n";
                    }
                    c.push_back(array_of(row));
                }
                j["connected"] = c;
                emit(format_or(g, "json") == "csv" ? csv : dump_json(j), g.output);
                return 0;
            };
        });
    }
}

}  // namespace

void register_commands(CLI::App& app, Globals& globals, Action& action) {
    add_partitions(app, globals, action);
    add_graphs(app, globals, action);
    add_cumulants(app, globals, action);
    add_expand(app, globals, action);
    add_free_energy(app, globals, action);
    add_rate(app, globals, action);
    add_ssep(app, globals, action);
    add_verify(app, globals, action);
}

}  // namespace ssepfree::cli
