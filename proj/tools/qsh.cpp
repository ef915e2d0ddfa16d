#include <CLI11.hpp>
#include <json.hpp>

#include "qsh/io.hpp"
#include "qsh/lowdim.hpp"
#include "qsh/minimal_model.hpp"
#include "qsh/spectral.hpp"

#include <chrono>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>

#ifdef _OPENMP
#include <omp.h>
#endif

using json = nlohmann::ordered_json;
using namespace qsh;

namespace {

constexpr const char* QSH_VERSION = "0.1.0";

// exit codes: 0 ok, 1 mismatch/violation, 2 usage, 3 budget exceeded
enum ExitCode : int { EXIT_OK = 0, EXIT_VIOLATION = 1, EXIT_USAGE = 2, EXIT_BUDGET = 3 };

struct InputSpec {
    std::string matrix_path, digraph_path, points_path, generator;
    std::string metric = "l2";
    std::string backend; // "", "int", "rat", "float"
    double tau = 1e-9;

    std::string describe() const {
        if (!matrix_path.empty()) return "matrix:" + matrix_path;
        if (!digraph_path.empty()) return "digraph:" + digraph_path;
        if (!points_path.empty()) return "points:" + points_path;
        return "gen:" + generator;
    }
};

std::string slurp(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw qsh_error("cannot open " + path);
    std::ostringstream os;
    os << in.rdbuf();
    return os.str();
}

std::map<std::string, std::string> parse_kv(const std::string& args) {
    std::map<std::string, std::string> kv;
    std::istringstream is(args);
    std::string item;
    while (std::getline(is, item, ',')) {
        auto eq = item.find('=');
        if (eq == std::string::npos) throw qsh_error("generator arguments look like key=value");
        kv[item.substr(0, eq)] = item.substr(eq + 1);
    }
    return kv;
}

struct LoadedInput {
    SpacePtr space;
    std::optional<Digraph> digraph;
};

LoadedInput load_input(const InputSpec& spec) {
    int sources = static_cast<int>(!spec.matrix_path.empty()) +
                  static_cast<int>(!spec.digraph_path.empty()) +
                  static_cast<int>(!spec.points_path.empty()) +
                  static_cast<int>(!spec.generator.empty());
    if (sources != 1) throw CLI::ValidationError("exactly one of --matrix/--digraph/--points/--gen");

    std::optional<Backend> forced;
    if (spec.backend == "int") forced = Backend::Int;
    else if (spec.backend == "rat") forced = Backend::Rat;
    else if (spec.backend == "float") forced = Backend::Flt;
    else if (!spec.backend.empty()) throw CLI::ValidationError("--backend is int, rat or float");
    if (forced && spec.matrix_path.empty())
        throw CLI::ValidationError("--backend only applies to --matrix inputs "
                                   "(digraphs are integer, point clouds are float)");

    LoadedInput in;
    if (!spec.matrix_path.empty()) {
        in.space = io::parse_matrix(slurp(spec.matrix_path), forced, spec.tau);
    } else if (!spec.digraph_path.empty()) {
        in.digraph = io::parse_digraph(slurp(spec.digraph_path));
        in.space = shortest_path_space(*in.digraph);
    } else if (!spec.points_path.empty()) {
        in.space = io::parse_points(slurp(spec.points_path), spec.metric, spec.tau);
    } else {
        auto colon = spec.generator.find(':');
        std::string name = spec.generator.substr(0, colon);
        auto kv = colon == std::string::npos ? std::map<std::string, std::string>{}
                                             : parse_kv(spec.generator.substr(colon + 1));
        if (name == "circle_arc") {
            in.space = io::circle_arc(kv.count("gap") ? std::stod(kv.at("gap")) : 30.0,
                                      kv.count("count") ? std::stoi(kv.at("count")) : 200, spec.tau);
        } else if (name == "grid") {
            in.space = io::grid(std::stoi(kv.at("w")), std::stoi(kv.at("h")), spec.tau);
        } else if (name == "cycle") {
            in.digraph = io::cycle(std::stoi(kv.at("n")));
            in.space = shortest_path_space(*in.digraph);
        } else {
            throw CLI::ValidationError("unknown generator " + name + " (circle_arc, grid, cycle)");
        }
    }
    return in;
}

struct Emitter {
    std::string format = "json"; // or csv
    void record(json j) const {
        j["version"] = QSH_VERSION;
        std::cout << j.dump() << "\n";
    }
};

json base_record(const std::string& command, const InputSpec& in) {
    json j;
    j["schema"] = "qsh-record/1";
    j["command"] = command;
    j["input"] = in.describe();
    return j;
}

json torsion_json(const std::vector<bigint>& torsion) {
    json arr = json::array();
    for (const auto& t : torsion) arr.push_back(t.str());
    return arr;
}

double ms_since(std::chrono::steady_clock::time_point t0) {
    return std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - t0).count();
}

Coefficients coeff_from(const std::string& name, uint32_t p) {
    if (name == "Z") return Coefficients::integers();
    if (name == "Q") return Coefficients::rationals();
    if (name == "Fp") {
        if (p < 2) throw CLI::ValidationError("--p must be a prime >= 2");
        return Coefficients::mod(p);
    }
    throw CLI::ValidationError("--coeff is Z, Q or Fp");
}

// ---------------------------------------------------------------------------
// verify suites

int run_verify(const LoadedInput& in, const InputSpec& spec, const SearchOptions& opts, int smax,
               int nmax, long long lmax, const Emitter& out) {
    paranoid_checks = true;
    int mismatches = 0;
    auto report = [&](const std::string& suite, bool ok, const std::string& detail,
                      std::vector<Provenance> paths = {}) {
        json j = base_record("verify", spec);
        j["suite"] = suite;
        j["ok"] = ok;
        if (!paths.empty()) {
            json ps = json::array();
            for (auto p : paths) ps.push_back(provenance_name(p));
            j["paths"] = ps;
        }
        if (!detail.empty()) j["detail"] = detail;
        out.record(j);
        if (!ok) ++mismatches;
    };
    const auto& X = in.space;
    SpectralEngine eng(X);

    // degree-0 oracle against the image formula
    {
        bool ok = true;
        std::string detail;
        for (const auto& g : X->distinct_finite_distances()) {
            SHQuery q{g.rep, 0, Interval::singleton(xreal::zero(X->backend)),
                      Coefficients::rationals(), std::nullopt};
            if (eng.sh(q).rank != sh0_classes(*X, g.rep, q.I)) {
                ok = false;
                detail = "sh0 mismatch at r = " + g.rep.str();
                break;
            }
        }
        report("sh0-classes-vs-image-formula", ok, detail,
               {Provenance::ImageFormula, Provenance::LowdimOracle});
    }

    // degree-1 adjacency oracle at every achieved level above the radius
    {
        bool ok = true;
        std::string detail;
        auto levels = eng.critical_levels(1);
        std::vector<xreal> radii{xreal::zero(X->backend)};
        if (!levels.empty()) radii.push_back(levels.front());
        for (const auto& r : radii)
            for (const auto& l : levels) {
                if (!(r < l)) continue;
                SHQuery q{r, 1, Interval::singleton(l), Coefficients::rationals(), std::nullopt};
                if (eng.sh(q).rank != sh1_adjacency(*X, l, r)) {
                    ok = false;
                    detail = "sh1 mismatch at l = " + l.str() + ", r = " + r.str();
                    break;
                }
            }
        report("sh1-adjacency-vs-image-formula", ok, detail,
               {Provenance::ImageFormula, Provenance::LowdimOracle});
    }

    // sz - sb = sh over sampled singleton queries
    {
        bool ok = true;
        std::string detail;
        for (const auto& l : eng.critical_levels(1))
            for (long long rs = 0; rs <= 2; ++rs) {
                xreal r = xreal::from_small(X->backend, rs);
                SHQuery q{r, 1, Interval::singleton(l), Coefficients::rationals(), std::nullopt};
                if (eng.sh(q).rank != eng.sz(q) - eng.sb(q)) {
                    ok = false;
                    detail = "sz - sb differs from sh at l = " + l.str();
                }
            }
        report("sz-sb-identity", ok, detail);
    }

    // homotopy invariance against the minimal model at each jumping point
    {
        bool ok = true;
        std::string detail;
        auto jumps = jumping_points(X, opts);
        for (const auto& r : jumps.points) {
            auto model = minimal_model(X, r, opts);
            SpectralEngine em(model.model);
            for (int n = 0; n <= std::min(nmax, 2); ++n)
                for (const auto& l : eng.critical_levels(n)) {
                    SHQuery q{r, n, Interval::singleton(l), Coefficients::rationals(), std::nullopt};
                    if (eng.sh(q).rank != em.sh(q).rank) {
                        ok = false;
                        detail = "rank changed under retraction at n = " + std::to_string(n) +
                                 ", l = " + l.str();
                    }
                }
        }
        report("homotopy-invariance", ok, detail);
    }

    if (in.digraph) {
        bool ok = true;
        std::string detail;
        for (int s = 1; s <= smax && ok; ++s)
            for (int n = 0; n <= nmax && ok; ++n)
                for (long long l = 0; l <= lmax && ok; ++l)
                    if (eng.mpss_page(s, n, l) != eng.mpss_page_ce(s, n, l)) {
                        ok = false;
                        detail = "page disagreement at s=" + std::to_string(s) +
                                 " n=" + std::to_string(n) + " l=" + std::to_string(l);
                    }
        report("dual-path-pages", ok, detail,
               {Provenance::ImageFormula, Provenance::CePageFormula});

        auto dec = verify_decomposition(*in.digraph, smax, nmax, lmax, opts);
        report("decomposition-ledger", dec.ok, dec.failures.empty() ? "" : dec.failures.front());
    }
    return mismatches ? EXIT_VIOLATION : EXIT_OK;
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"r-homotopy invariants of finite quasimetric spaces and digraphs"};
    app.require_subcommand(1);

    InputSpec input;
    SearchOptions search;
    std::string coeff_name = "Q";
    uint32_t prime = 0;
    int jobs = 0;
    bool paranoid = false;

    app.add_option("--tau", input.tau, "float critical-value grouping width")->capture_default_str();
    app.add_option("--budget", search.node_budget, "search node budget")->capture_default_str();
    app.add_option("--seed", search.seed, "randomize search order (0 = deterministic)");
    app.add_option("--jobs", jobs, "worker threads for independent queries (0 = all cores)");
    app.add_flag("--paranoid", paranoid, "re-check d^2, chain maps, SNF and plateaus while running");

    auto add_input = [&](CLI::App* cmd) {
        cmd->fallthrough(); // global flags may follow the subcommand
        cmd->add_option("--matrix", input.matrix_path, "distance matrix file");
        cmd->add_option("--digraph", input.digraph_path, "edge list file");
        cmd->add_option("--points", input.points_path, "point cloud file");
        cmd->add_option("--gen", input.generator, "generator, e.g. circle_arc:gap=30,count=200");
        cmd->add_option("--metric", input.metric, "point metric: l2, l1, linf");
        cmd->add_option("--backend", input.backend, "force matrix backend: int, rat, float");
    };

    Emitter out;
    app.add_option("--format", out.format, "json or csv")->capture_default_str();

    std::string r_text = "0", level_text;
    int degree = 0, smax = 3, nmax = 2, page = 1;
    long long lmax = 4;
    std::optional<int> degree_bound;
    bool use_ce = false, with_zb = false;
    std::vector<std::string> intervals;

    auto* c_validate = app.add_subcommand("validate", "check the quasimetric axioms");
    add_input(c_validate);

    auto* c_minimal = app.add_subcommand("minimal-model", "r-minimal model with certificate");
    add_input(c_minimal);
    c_minimal->add_option("--r", r_text, "homotopy radius")->required();

    auto* c_jumps = app.add_subcommand("jumping-points", "where the minimal model shrinks");
    add_input(c_jumps);

    auto* c_nested = app.add_subcommand("nested-models", "the nested chain of retracts");
    add_input(c_nested);

    auto* c_mag = app.add_subcommand("magnitude", "magnitude homology at one level");
    add_input(c_mag);
    c_mag->add_option("--n", degree, "degree")->required();
    c_mag->add_option("--l", level_text, "level")->required();

    auto* c_ph = app.add_subcommand("path-homology", "path homology of a digraph");
    add_input(c_ph);
    c_ph->add_option("--n", degree, "degree")->required();

    auto* c_rh = app.add_subcommand("reachability", "homology of the whole reachability complex");
    add_input(c_rh);
    c_rh->add_option("--n", degree, "degree")->required();
    c_rh->add_option("--degree-bound", degree_bound, "materialized degree bound");

    auto* c_sh = app.add_subcommand("spectral", "spectral homology of interval queries");
    add_input(c_sh);
    c_sh->add_option("--r", r_text, "homotopy radius")->required();
    c_sh->add_option("--n", degree, "degree")->required();
    c_sh->add_option("--interval", intervals, "interval, e.g. \"{2}\" \"[1,3]\" \"(-inf,2]\" \"R\"")
        ->required();
    c_sh->add_option("--coeff", coeff_name, "Z, Q or Fp")->capture_default_str();
    c_sh->add_option("--p", prime, "prime for Fp");
    c_sh->add_option("--degree-bound", degree_bound, "needed when the interval is unbounded");
    c_sh->add_flag("--with-zb", with_zb, "also report spectral cycle/boundary ranks");

    auto* c_pers = app.add_subcommand("persistence", "persistent spectral homology barcode");
    add_input(c_pers);
    c_pers->add_option("--r", r_text, "homotopy radius")->required();
    c_pers->add_option("--n", degree, "degree")->required();

    auto* c_mpss = app.add_subcommand("mpss", "page table of the length spectral sequence");
    add_input(c_mpss);
    c_mpss->add_option("--page", page, "page s >= 1")->required();
    c_mpss->add_option("--nmax", nmax, "max degree")->capture_default_str();
    c_mpss->add_option("--lmax", lmax, "max level")->capture_default_str();
    c_mpss->add_flag("--ce", use_ce, "use the cycle/boundary subquotient formulas");

    auto* c_verify = app.add_subcommand("verify", "dual-path, oracle and invariance suites");
    add_input(c_verify);
    c_verify->add_option("--smax", smax, "max page")->capture_default_str();
    c_verify->add_option("--nmax", nmax, "max degree")->capture_default_str();
    c_verify->add_option("--lmax", lmax, "max level")->capture_default_str();

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        int rc = app.exit(e); // prints help or the usage message
        return rc == 0 ? EXIT_OK : EXIT_USAGE;
    }

    if (jobs > 0) {
#ifdef _OPENMP
        omp_set_num_threads(jobs);
#endif
    }
    search.verify_plateaus = paranoid;
    if (paranoid) paranoid_checks = true;

    const auto t0 = std::chrono::steady_clock::now();
    try {
        auto in = load_input(input);
        Backend backend = in.space->backend;

        if (app.got_subcommand(c_validate)) {
            json j = base_record("validate", input);
            j["valid"] = true;
            j["size"] = in.space->size;
            j["backend"] = backend_name(backend);
            j["wall_ms"] = ms_since(t0);
            out.record(j);
            return EXIT_OK;
        }

        if (app.got_subcommand(c_minimal)) {
            auto res = minimal_model(in.space, xreal::parse(r_text, backend), search);
            json j = base_record("minimal-model", input);
            j["r"] = r_text;
            j["subset"] = res.subset;
            j["size"] = res.model->size;
            j["certificate_length"] = res.certificate.maps.size();
            j["certificate_ok"] = verify_homotopy_chain(res.certificate);
            j["wall_ms"] = ms_since(t0);
            out.record(j);
            return EXIT_OK;
        }

        if (app.got_subcommand(c_jumps)) {
            auto res = jumping_points(in.space, search);
            json j = base_record("jumping-points", input);
            json pts = json::array(), merges = json::array();
            for (const auto& p : res.points) pts.push_back(p.str());
            for (const auto& grp : res.merged_groups) {
                json g = json::array();
                for (const auto& v : grp) g.push_back(v.str());
                merges.push_back(g);
            }
            j["points"] = pts;
            j["model_sizes"] = res.model_sizes;
            j["ratios"] = res.ratios;
            j["merged_groups"] = merges;
            j["wall_ms"] = ms_since(t0);
            out.record(j);
            return EXIT_OK;
        }

        if (app.got_subcommand(c_nested)) {
            auto chain = nested_models(in.space, search);
            for (const auto& step : chain) {
                json j = base_record("nested-models", input);
                j["r"] = step.certificate.radius.str();
                j["subset"] = step.subset;
                j["size"] = step.model->size;
                j["certificate_ok"] = verify_homotopy_chain(step.certificate);
                j["wall_ms"] = ms_since(t0);
                out.record(j);
            }
            return EXIT_OK;
        }

        if (app.got_subcommand(c_mag)) {
            SpectralEngine eng(in.space);
            auto h = eng.magnitude_homology(degree, xreal::parse(level_text, backend));
            json j = base_record("magnitude", input);
            j["n"] = degree;
            j["l"] = level_text;
            j["rank"] = h.rank;
            j["torsion"] = torsion_json(h.torsion);
            j["wall_ms"] = ms_since(t0);
            out.record(j);
            return EXIT_OK;
        }

        if (app.got_subcommand(c_ph)) {
            if (!in.digraph) throw CLI::ValidationError("path homology expects a digraph input");
            SpectralEngine eng(in.space);
            long long rank = eng.mpss_page(2, degree, degree);
            json j = base_record("path-homology", input);
            j["n"] = degree;
            j["rank"] = rank;
            j["provenance"] = provenance_name(Provenance::ImageFormula);
            if (paranoid) {
                long long ce = eng.mpss_page_ce(2, degree, degree);
                j["ce_rank"] = ce;
                if (ce != rank) {
                    out.record(j);
                    return EXIT_VIOLATION;
                }
            }
            j["wall_ms"] = ms_since(t0);
            out.record(j);
            return EXIT_OK;
        }

        if (app.got_subcommand(c_rh)) {
            SpectralEngine eng(in.space);
            auto h = eng.reachability_homology(degree, degree_bound.value_or(degree + 1));
            json j = base_record("reachability", input);
            j["n"] = degree;
            j["rank"] = h.rank;
            j["torsion"] = torsion_json(h.torsion);
            j["wall_ms"] = ms_since(t0);
            out.record(j);
            return EXIT_OK;
        }

        if (app.got_subcommand(c_sh)) {
            SpectralEngine eng(in.space);
            auto coeff = coeff_from(coeff_name, prime);
            const long long total = static_cast<long long>(intervals.size());
            std::vector<json> records(intervals.size());
            std::exception_ptr failure;
#pragma omp parallel for schedule(dynamic, 1)
            for (long long k = 0; k < total; ++k) {
                try {
                    SHQuery q{xreal::parse(r_text, backend), degree,
                              Interval::parse(intervals[k], backend), coeff, degree_bound};
                    auto res = eng.sh(q);
                    json j = base_record("spectral", input);
                    j["r"] = r_text;
                    j["n"] = degree;
                    j["interval"] = q.I.str();
                    j["coeff"] = coeff.str();
                    j["rank"] = res.rank;
                    j["torsion"] = torsion_json(res.torsion);
                    j["provenance"] = provenance_name(res.provenance);
                    if (with_zb) {
                        j["sz"] = eng.sz(q);
                        j["sb"] = eng.sb(q);
                    }
                    records[k] = std::move(j);
                } catch (...) {
#pragma omp critical
                    failure = std::current_exception();
                }
            }
            if (failure) std::rethrow_exception(failure);
            for (auto& j : records) { // buffered, emitted in input order
                j["wall_ms"] = ms_since(t0);
                out.record(j);
            }
            return EXIT_OK;
        }

        if (app.got_subcommand(c_pers)) {
            SpectralEngine eng(in.space);
            auto diagram = eng.persistent_sh(xreal::parse(r_text, backend), degree);
            if (out.format == "csv") {
                std::cout << "birth,death\n";
                for (const auto& bar : diagram.bars)
                    std::cout << bar.birth.str() << "," << (bar.infinite ? "inf" : bar.death.str())
                              << "\n";
            } else {
                json j = base_record("persistence", input);
                j["r"] = r_text;
                j["n"] = degree;
                json bars = json::array();
                for (const auto& bar : diagram.bars) {
                    json b;
                    b["birth"] = bar.birth.str();
                    b["death"] = bar.infinite ? json("inf") : json(bar.death.str());
                    bars.push_back(b);
                }
                j["bars"] = bars;
                json axis = json::array();
                for (const auto& v : diagram.critical_values) axis.push_back(v.str());
                j["critical_values"] = axis;
                j["dims"] = diagram.dims;
                j["wall_ms"] = ms_since(t0);
                out.record(j);
            }
            return EXIT_OK;
        }

        if (app.got_subcommand(c_mpss)) {
            if (backend != Backend::Int) throw non_integer_query();
            SpectralEngine eng(in.space);
            struct Cell {
                int n;
                long long l;
                long long rank;
            };
            std::vector<Cell> cells;
            for (int n = 0; n <= nmax; ++n)
                for (long long l = 0; l <= lmax; ++l) cells.push_back({n, l, 0});
            const long long total = static_cast<long long>(cells.size());
            std::exception_ptr failure;
#pragma omp parallel for schedule(dynamic, 1)
            for (long long k = 0; k < total; ++k) {
                try {
                    cells[k].rank = use_ce ? eng.mpss_page_ce(page, cells[k].n, cells[k].l)
                                           : eng.mpss_page(page, cells[k].n, cells[k].l);
                } catch (...) {
#pragma omp critical
                    failure = std::current_exception();
                }
            }
            if (failure) std::rethrow_exception(failure);
            if (out.format == "csv") {
                std::cout << "page,n,l,rank\n";
                for (const auto& c : cells)
                    std::cout << page << "," << c.n << "," << c.l << "," << c.rank << "\n";
            } else {
                json j = base_record("mpss", input);
                j["page"] = page;
                j["provenance"] =
                    provenance_name(use_ce ? Provenance::CePageFormula : Provenance::ImageFormula);
                json entries = json::array();
                for (const auto& c : cells)
                    if (c.rank != 0) entries.push_back({{"n", c.n}, {"l", c.l}, {"rank", c.rank}});
                j["entries"] = entries;
                j["wall_ms"] = ms_since(t0);
                out.record(j);
            }
            return EXIT_OK;
        }

        if (app.got_subcommand(c_verify)) return run_verify(in, input, search, smax, nmax, lmax, out);

        return EXIT_USAGE;
    } catch (const budget_exceeded& e) {
        std::cerr << "error: " << e.what() << "\n";
        return EXIT_BUDGET;
    } catch (const CLI::ValidationError& e) {
        std::cerr << "usage error: " << e.what() << "\n";
        return EXIT_USAGE;
    } catch (const validation_error& e) {
        json j;
        j["schema"] = "qsh-record/1";
        j["command"] = "validate";
        j["valid"] = false;
        j["violation"] = e.what();
        j["x"] = e.x;
        j["y"] = e.y;
        if (e.z >= 0) j["z"] = e.z;
        std::cout << j.dump() << "\n";
        return EXIT_VIOLATION;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return EXIT_VIOLATION;
    }
}
