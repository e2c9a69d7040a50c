#include "commands.h"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <functional>
#include <memory>
#include <numbers>
#include <optional>
#include <ostream>
#include <regex>
#include <sstream>
#include <stdexcept>
#include <thread>

#include <CLI11.hpp>

#include "witness_forge/catalog.h"
#include "witness_forge/contraction.h"
#include "witness_forge/duality.h"
#include "witness_forge/indecomp.h"
#include "witness_forge/poscert.h"
#include "witness_forge/serialize.h"

namespace witness_forge::cli {

namespace {

constexpr std::size_t kMaxRestarts = 10000;
constexpr std::size_t kMaxGridPoints = 1000000;

// Input problems the user can fix; mapped to exit code 2.
struct InputError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

struct Options {
    double tol = 1e-9;
    std::string seed_text;
    std::optional<std::size_t> restarts;
    std::size_t jobs = 1;
    std::string out_path;
    std::string spec_path;
    std::vector<std::string> args;

    // certify
    bool positive = false, cp = false, ccp = false, witness = false;
    // sweep
    std::string grid;
    std::size_t d = 3;
    double step = 0.05;
    double sum = 2.0;

    std::optional<std::uint64_t> seed;
};

const char *kFooter = R"(Inputs: NAME PARAMS... inline, or --spec FILE with a map object
  {"kind": "catalog", "name": ..., "params": [...]}, {"kind": "gen", "d", "a", "c"} or
  {"kind": "table", "d", "action": [{"dim", "re", "im"}, ...]}. Numbers accept pi forms (-pi/3).
  WITNESS_FORGE_SEED overrides --seed.

Sweep CSV columns (floats at 17 significant digits, rows in grid order):
  choi-abc:  a,b,c,positive,cp,cho_kye,theorem4,pairing,verdict,gate
  phi-p:     p0,q,positive,cp,phi_p,theorem4,pairing,verdict,gate   (p = (p0, q, .., q))
  cyclic-d:  alpha_0..alpha_{d-1},positive,cp,theorem4,pairing,verdict,gate
  pairing is empty when no detector state was evaluated; gate names the first failed check.

Exit codes: 0 completed, 1 negative finding (detect: not certified; witness: not a witness),
  2 input error.)";

std::string fmt17(double x) {
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.17g", x);
    return buf;
}

const char *yes_no(bool b) { return b ? "true" : "false"; }

std::vector<double> parse_numbers(const std::vector<std::string> &tokens) {
    std::vector<double> out;
    out.reserve(tokens.size());
    for (const auto &t : tokens) out.push_back(parse_number(t));
    return out;
}

json read_spec_file(const std::string &path) {
    std::ifstream in(path);
    if (!in) throw InputError("cannot open spec file '" + path + "'");
    try {
        return json::parse(in);
    } catch (const json::parse_error &e) {
        throw InputError("spec file '" + path + "': " + e.what());
    }
}

// Resolves the map named inline or by --spec. Names outside the catalog are
// returned through `special` for the caller to handle.
std::optional<NamedMap> resolve_map(const Options &o, std::string *special = nullptr) {
    if (!o.spec_path.empty()) {
        if (!o.args.empty()) throw InputError("give either inline NAME PARAMS or --spec, not both");
        const json j = read_spec_file(o.spec_path);
        if (special && j.is_object() && j.contains("kind") && j.at("kind") == "terhal-tiles") {
            *special = "terhal-tiles";
            return std::nullopt;
        }
        return map_from_json(j);
    }
    if (o.args.empty()) throw InputError("missing map: give NAME PARAMS... or --spec FILE");
    if (special && o.args.front() == "terhal-tiles") {
        if (o.args.size() != 1) throw InputError("terhal-tiles takes no parameters");
        *special = "terhal-tiles";
        return std::nullopt;
    }
    return build_catalog(o.args.front(), parse_numbers({o.args.begin() + 1, o.args.end()}));
}

SimplexBudget simplex_budget(const Options &o) {
    SimplexBudget b;
    b.tolerance = o.tol;
    if (o.seed) b.seed = *o.seed;
    if (o.restarts) b.random_points = *o.restarts;
    return b;
}

ProductBudget product_budget(const Options &o) {
    ProductBudget b;
    b.tolerance = o.tol;
    if (o.seed) b.seed = *o.seed;
    if (o.restarts) b.seeds = *o.restarts;
    return b;
}

struct Emitter {
    const Options &o;
    std::ostream &out;
    void operator()(const std::string &text) const {
        if (o.out_path.empty()) {
            out << text;
            return;
        }
        std::ofstream f(o.out_path, std::ios::binary);
        if (!f) throw InputError("cannot write '" + o.out_path + "'");
        f << text;
    }
};

std::string dump(const json &j) { return dump17(j); }

// --- catalog ---------------------------------------------------------------

int cmd_catalog(const Options &o, const Emitter &emit) {
    if (o.args.empty() && o.spec_path.empty()) {
        json list = json::array();
        for (const auto &e : catalog_entries())
            list.push_back(json{{"name", e.name}, {"params", e.params}, {"summary", e.summary}});
        emit(dump(list));
        return kOk;
    }
    emit(dump(to_json(*resolve_map(o))));
    return kOk;
}

// --- certify ---------------------------------------------------------------

int cmd_certify(const Options &o, const Emitter &emit) {
    const NamedMap m = *resolve_map(o);
    const bool all = !(o.positive || o.cp || o.ccp || o.witness);
    json certs = json::array();
    json summary = json::object();
    auto add = [&](const char *key, json c) {
        summary[key] = c.at("holds");
        certs.push_back(std::move(c));
    };
    if (all || o.positive) {
        if (m.gen)
            add("positive", to_json(certify_gen_positive(*m.gen, simplex_budget(o))));
        else
            add("positive", to_json(positivity_probe(m.rep, o.restarts.value_or(64), o.seed.value_or(0xC401), o.tol)));
    }
    if (all || o.cp) add("cp", to_json(m.gen ? certify_cp(*m.gen) : certify_cp_choi(m.rep)));
    if (all || o.ccp) add("ccp", to_json(certify_ccp(m.rep)));
    if (all || o.witness) add("witness", to_json(is_entanglement_witness(jam(m.rep), m.rep.d(), product_budget(o))));
    emit(dump(json{{"map", to_json(m)}, {"summary", std::move(summary)}, {"certificates", std::move(certs)}}));
    return kOk;
}

// --- detect ----------------------------------------------------------------

IndecompCertificate detect(const GenMap &m, const SimplexBudget &budget) {
    const GenMap b = to_gen_b(m);
    const std::size_t d = b.d();
    std::vector<double> alpha(d);
    for (std::size_t j = 0; j < d; ++j) alpha[j] = b.a(0, j);
    if (d < 3 || !is_cyclic(b.a()) || !b.bistochastic()) {
        IndecompCertificate cert(b);
        cert.alpha = alpha;
        cert.failed_gate = "input";
        cert.detail = d < 3 ? "need d >= 3" : "coefficient matrix must be circulant and bistochastic after rescaling";
        return cert;
    }
    return certify_indecomposable(b, CyclicSpec(alpha), budget);
}

int cmd_detect(const Options &o, const Emitter &emit) {
    const NamedMap m = *resolve_map(o);
    if (!m.gen) throw InputError("detect needs a map of the coefficient class (gen kind), got '" + m.name + "'");
    const IndecompCertificate cert = detect(*m.gen, simplex_budget(o));
    json j = to_json(cert);
    j["name"] = m.name;
    const double scale = m.gen->c() / cert.map.c();
    if (std::abs(scale - 1.0) > 1e-15) j["map_scale"] = scale;
    emit(dump(j));
    return cert.indecomposable() ? kOk : kNegative;
}

// --- witness ---------------------------------------------------------------

int cmd_witness(const Options &o, const Emitter &emit, std::ostream &err) {
    std::string special;
    const auto m = resolve_map(o, &special);
    Witness w = special == "terhal-tiles" ? terhal_witness(tiles_upb(), canonical_max_entangled(3), product_budget(o))
                                          : witness_from_map(m->rep, m->name, product_budget(o));
    emit(dump(to_json(w)));
    if (w.valid) return kOk;
    if (w.lambda_min >= -psd_tolerance(w.w))
        err << "not a witness (PSD)\n";
    else
        err << "not a witness (negative on product vectors)\n";
    return kNegative;
}

// --- appendix-demo ---------------------------------------------------------

int cmd_appendix(const Options &o, const Emitter &emit) {
    std::vector<double> p{1.0, 1.0, 0.0, -std::numbers::pi / 3.0};
    if (!o.args.empty()) {
        p = parse_numbers(o.args);
        if (p.size() != 4) throw InputError("appendix-demo takes lambda1 lambda2 phi1 phi2");
    }
    const GenMap a = appendix_d3(p[0], p[1], p[2], p[3]);
    const RealMatrix ref = CyclicSpec({0.5, 0.5, 0.0}).matrix();
    const double dev = max_abs_diff(a.a(), ref);
    emit(dump(json{{"params", p},
                   {"a", to_json(a.a())},
                   {"c", a.c()},
                   {"reference", to_json(ref)},
                   {"max_deviation", dev},
                   {"matches_reference", dev <= 1e-12}}));
    return kOk;
}

// --- sweep -----------------------------------------------------------------

struct Axis {
    std::string name;
    std::vector<double> values;
};

std::vector<Axis> parse_grid(const std::string &grid, const std::vector<std::string> &expected) {
    std::vector<Axis> axes;
    std::stringstream ss(grid);
    std::string item;
    static const std::regex re(R"(\s*([A-Za-z_][A-Za-z0-9_]*)\s*=\s*([^:]+):([^:]+):([^:]+)\s*)");
    while (std::getline(ss, item, ',')) {
        std::smatch mt;
        if (!std::regex_match(item, mt, re)) throw InputError("grid axis '" + item + "' is not NAME=LO:HI:STEP");
        const double lo = parse_number(mt[2]), hi = parse_number(mt[3]), step = parse_number(mt[4]);
        if (!(step > 0.0)) throw InputError("grid step must be positive");
        Axis ax{mt[1], {}};
        if (hi >= lo) {
            const double count = std::floor((hi - lo) / step + 1e-9) + 1.0;
            if (count > static_cast<double>(kMaxGridPoints)) throw InputError("grid exceeds 1e6 points");
            for (std::size_t i = 0; i < static_cast<std::size_t>(count); ++i)
                ax.values.push_back(std::round((lo + static_cast<double>(i) * step) * 1e12) / 1e12);
        }
        axes.push_back(std::move(ax));
    }
    if (axes.size() != expected.size()) throw InputError("grid must define axes " + expected.front() + "," + expected.back());
    for (std::size_t i = 0; i < axes.size(); ++i)
        if (axes[i].name != expected[i]) throw InputError("grid axis " + std::to_string(i + 1) + " must be '" + expected[i] + "'");
    return axes;
}

struct Sweep {
    std::string header;
    std::size_t count = 0;
    std::function<std::string(std::size_t)> row;
};

// Columns shared by families: pairing, verdict, gate.
std::string tail(const IndecompCertificate &c) {
    const bool evaluated = c.failed_gate.empty() || c.failed_gate == "pairing_identity" || c.failed_gate == "pairing_sign";
    return (evaluated ? fmt17(c.pairing) : std::string()) + "," + c.verdict + "," + c.failed_gate;
}

Sweep sweep_choi_abc(const Options &o) {
    const std::string grid = o.grid.empty() ? "a=0:2:0.1,b=0:2:0.1" : o.grid;
    const auto axes = parse_grid(grid, {"a", "b"});
    if (!(o.sum > 0.0)) throw InputError("--sum must be positive");
    if (static_cast<double>(axes[0].values.size()) * static_cast<double>(axes[1].values.size()) > kMaxGridPoints)
        throw InputError("grid exceeds 1e6 points");
    struct Point {
        double a, b, c;
    };
    auto points = std::make_shared<std::vector<Point>>();
    for (double a : axes[0].values)
        for (double b : axes[1].values) {
            double c = std::round((o.sum - a - b) * 1e12) / 1e12;
            if (c < 0.0) continue;
            points->push_back({a, b, c});
        }
    const SimplexBudget budget = simplex_budget(o);
    return {"a,b,c,positive,cp,cho_kye,theorem4,pairing,verdict,gate", points->size(), [points, budget](std::size_t i) {
                const auto [a, b, c] = (*points)[i];
                const GenMap m = choi_abc(a, b, c);
                const IndecompCertificate cert = detect(m, budget);
                return fmt17(a) + "," + fmt17(b) + "," + fmt17(c) + "," + yes_no(cert.positivity.positive()) + "," +
                       yes_no(certify_cp(m).holds) + "," + yes_no(cho_kye_check(a, b, c)) + "," +
                       to_string(theorem4_check(CyclicSpec(cert.alpha)).which) + "," + tail(cert);
            }};
}

Sweep sweep_phi_p(const Options &o) {
    const std::size_t d = o.d;
    if (d < 3 || d > 8) throw InputError("phi-p sweep needs 3 <= d <= 8");
    const std::string grid = o.grid.empty()
                                 ? "p0=" + std::to_string(d - 2) + ":" + std::to_string(d - 1) + ":0.05,q=0:2:0.1"
                                 : o.grid;
    const auto axes = parse_grid(grid, {"p0", "q"});
    if (static_cast<double>(axes[0].values.size()) * static_cast<double>(axes[1].values.size()) > kMaxGridPoints)
        throw InputError("grid exceeds 1e6 points");
    for (double v : axes[0].values)
        if (v < 0.0) throw InputError("p0 must be nonnegative");
    for (double v : axes[1].values)
        if (v < 0.0) throw InputError("q must be nonnegative");
    const std::size_t nq = axes[1].values.size();
    const SimplexBudget budget = simplex_budget(o);
    return {"p0,q,positive,cp,phi_p,theorem4,pairing,verdict,gate", axes[0].values.size() * nq,
            [axes, nq, d, budget](std::size_t i) {
                const double p0 = axes[0].values[i / nq], q = axes[1].values[i % nq];
                std::vector<double> p(d + 1, q);
                p[0] = p0;
                const GenMap m = phi_p(p);
                const PositivityVerdict pos = certify_gen_positive(m, budget);
                std::string cells = fmt17(p0) + "," + fmt17(q) + "," + yes_no(pos.positive()) + "," +
                                    yes_no(certify_cp(m).holds) + "," + yes_no(phi_p_check(p)) + ",";
                const double total = p0 + q;
                Theorem4Case which = Theorem4Case::none;
                std::optional<CyclicSpec> spec;
                if (total > 0.0) {
                    std::vector<double> alpha(d);
                    for (std::size_t j = 0; j < d; ++j) alpha[j] = m.a(0, j) / total;
                    spec.emplace(alpha);
                    which = theorem4_check(*spec).which;
                }
                cells += to_string(which) + ",";
                if (!pos.positive()) return cells + ",not_certified,positivity";
                if (which == Theorem4Case::none) return cells + ",not_certified,theorem4_check";
                const DetectorState det = detector_state(d, optimal_a(*spec));
                const double pr = pairing(det.rho, from_gen(m));
                return cells + fmt17(pr) + "," + (pr < -1e-9 ? std::string("indecomposable,") : std::string("not_certified,pairing_sign"));
            }};
}

std::size_t binomial(std::size_t n, std::size_t k) {
    double r = 1.0;
    for (std::size_t i = 1; i <= k; ++i) r = r * static_cast<double>(n - k + i) / static_cast<double>(i);
    return r > 1e18 ? static_cast<std::size_t>(-1) : static_cast<std::size_t>(std::llround(r));
}

Sweep sweep_cyclic(const Options &o) {
    const std::size_t d = o.d;
    if (d < 3 || d > 8) throw InputError("cyclic-d sweep needs 3 <= d <= 8");
    if (!(o.step > 0.0 && o.step <= 1.0)) throw InputError("--step must lie in (0, 1]");
    const auto n = static_cast<std::size_t>(std::llround(1.0 / o.step));
    if (std::abs(static_cast<double>(n) * o.step - 1.0) > 1e-9) throw InputError("--step must divide 1");
    if (binomial(n + d - 1, d - 1) > kMaxGridPoints) throw InputError("grid exceeds 1e6 points");

    auto points = std::make_shared<std::vector<std::vector<std::size_t>>>();
    std::vector<std::size_t> comp(d, 0);
    // Compositions of n into d parts, lexicographic in (n_0, .., n_{d-1}).
    std::function<void(std::size_t, std::size_t)> rec = [&](std::size_t pos, std::size_t left) {
        if (pos + 1 == d) {
            comp[pos] = left;
            points->push_back(comp);
            return;
        }
        for (std::size_t v = 0; v <= left; ++v) {
            comp[pos] = v;
            rec(pos + 1, left - v);
        }
    };
    rec(0, n);

    std::string header;
    for (std::size_t j = 0; j < d; ++j) header += "alpha_" + std::to_string(j) + ",";
    header += "positive,cp,theorem4,pairing,verdict,gate";
    const SimplexBudget budget = simplex_budget(o);
    return {header, points->size(), [points, n, budget](std::size_t i) {
                std::vector<double> alpha;
                for (std::size_t c : (*points)[i]) alpha.push_back(static_cast<double>(c) / static_cast<double>(n));
                const CyclicSpec spec(alpha);
                const GenMap m = cyclic_gen_b(spec);
                const IndecompCertificate cert = certify_indecomposable(m, spec, budget);
                std::string cells;
                for (double x : alpha) cells += fmt17(x) + ",";
                return cells + yes_no(cert.positivity.positive()) + "," + yes_no(certify_cp(m).holds) + "," +
                       to_string(theorem4_check(spec).which) + "," + tail(cert);
            }};
}

int cmd_sweep(Options o, const Emitter &emit) {
    std::string family;
    if (!o.spec_path.empty()) {
        const json j = read_spec_file(o.spec_path);
        if (!j.is_object() || !j.contains("family") || !j.at("family").is_string())
            throw InputError("sweep spec needs a \"family\" string");
        family = j.at("family").get<std::string>();
        if (j.contains("grid")) o.grid = j.at("grid").get<std::string>();
        if (j.contains("d")) o.d = j.at("d").get<std::size_t>();
        if (j.contains("step")) o.step = j.at("step").get<double>();
        if (j.contains("sum")) o.sum = j.at("sum").get<double>();
    } else {
        if (o.args.size() != 1) throw InputError("sweep takes one FAMILY (choi-abc, phi-p, cyclic-d)");
        family = o.args.front();
    }

    Sweep sweep;
    if (family == "choi-abc")
        sweep = sweep_choi_abc(o);
    else if (family == "phi-p")
        sweep = sweep_phi_p(o);
    else if (family == "cyclic-d")
        sweep = sweep_cyclic(o);
    else
        throw InputError("unknown sweep family '" + family + "'");

    std::vector<std::string> rows(sweep.count);
    std::atomic<std::size_t> next{0};
    auto worker = [&] {
        for (std::size_t i = next++; i < sweep.count; i = next++) {
            try {
                rows[i] = sweep.row(i);
            } catch (const std::exception &e) {
                std::string msg = e.what();
                std::replace(msg.begin(), msg.end(), ',', ';');
                rows[i] = "error," + msg;
            }
        }
    };
    const std::size_t jobs = std::min(o.jobs, std::max<std::size_t>(sweep.count, 1));
    std::vector<std::thread> pool;
    for (std::size_t t = 1; t < jobs; ++t) pool.emplace_back(worker);
    worker();
    for (auto &t : pool) t.join();

    std::string text = sweep.header + "\n";
    for (const auto &r : rows) text += r + "\n";
    emit(text);
    return kOk;
}

}  // namespace

double parse_number(const std::string &token) {
    static const std::regex pi_form(R"(\s*([+-]?)(\d*\.?\d*)\*?pi(?:/(\d+(?:\.\d*)?))?\s*)");
    std::smatch m;
    if (std::regex_match(token, m, pi_form)) {
        double v = std::numbers::pi;
        if (m[2].length() > 0) v *= std::stod(m[2]);
        if (m[3].length() > 0) v /= std::stod(m[3]);
        return m[1] == "-" ? -v : v;
    }
    std::size_t used = 0;
    double v = 0.0;
    try {
        v = std::stod(token, &used);
    } catch (const std::exception &) {
        throw InputError("not a number: '" + token + "'");
    }
    if (used != token.size() || !std::isfinite(v)) throw InputError("not a number: '" + token + "'");
    return v;
}

int run(const std::vector<std::string> &args, std::ostream &out, std::ostream &err) {
    Options o;
    CLI::App app{"Positive maps, entanglement witnesses and indecomposability certificates.", "witness-forge"};
    app.footer(kFooter);
    app.require_subcommand(1);
    app.add_option("--tol", o.tol, "Verdict tolerance for positivity and product minima")->check(CLI::PositiveNumber);
    app.add_option("--seed", o.seed_text, "Seed for randomized searches (decimal or 0x hex)");
    app.add_option("--restarts", o.restarts, "Random starts for minimizations (<= 10000)");
    app.add_option("--jobs", o.jobs, "Worker threads for sweep")->check(CLI::Range(1, 256));
    app.add_option("--out", o.out_path, "Write output to this file instead of stdout");
    app.add_option("--spec", o.spec_path, "Read the input from a JSON file");

    auto *catalog = app.add_subcommand("catalog", "Emit a named map as JSON (no NAME: list the catalog)");
    auto *certify = app.add_subcommand("certify", "Certify positivity, CP, CcP and witness properties");
    auto *detect_cmd = app.add_subcommand("detect", "Indecomposability certificate for a cyclic map");
    auto *witness = app.add_subcommand("witness", "Export the witness operator of a map, or terhal-tiles");
    auto *sweep = app.add_subcommand("sweep", "Grid sweep of a family to CSV (choi-abc, phi-p, cyclic-d)");
    auto *appendix = app.add_subcommand("appendix-demo", "d = 3 contraction parameterization vs the Choi matrix");
    for (auto *sub : {catalog, certify, detect_cmd, witness, sweep, appendix}) {
        sub->fallthrough();
        sub->add_option("args", o.args, "NAME PARAMS...");
    }
    certify->add_flag("--positive", o.positive, "Positivity");
    certify->add_flag("--cp", o.cp, "Complete positivity");
    certify->add_flag("--ccp", o.ccp, "Complete copositivity");
    certify->add_flag("--witness", o.witness, "Choi matrix is an entanglement witness");
    sweep->add_option("--grid", o.grid, "Axes NAME=LO:HI:STEP,... (choi-abc: a,b; phi-p: p0,q)");
    sweep->add_option("--d", o.d, "Dimension for phi-p and cyclic-d");
    sweep->add_option("--step", o.step, "Simplex step for cyclic-d");
    sweep->add_option("--sum", o.sum, "a + b + c for choi-abc");

    try {
        std::vector<std::string> reversed(args.rbegin(), args.rend());
        // "-pi/3" would read as the short flag -p; "-1pi/3" is the same number.
        for (auto &t : reversed)
            if (t.rfind("-pi", 0) == 0) t.insert(1, "1");
        app.parse(reversed);
    } catch (const CLI::ParseError &e) {
        const int code = app.exit(e, out, err);
        return code == 0 ? kOk : kInputError;
    }

    try {
        if (const char *env = std::getenv("WITNESS_FORGE_SEED"); env && *env) o.seed_text = env;
        if (!o.seed_text.empty()) {
            std::size_t used = 0;
            unsigned long long v = 0;
            try {
                v = std::stoull(o.seed_text, &used, 0);
            } catch (const std::exception &) {
                used = 0;
            }
            if (used == 0 || used != o.seed_text.size()) throw InputError("seed must be an unsigned integer: '" + o.seed_text + "'");
            o.seed = v;
        }
        if (o.restarts && (*o.restarts == 0 || *o.restarts > kMaxRestarts))
            throw InputError("--restarts must lie in [1, 10000]");

        const Emitter emit{o, out};
        if (*catalog) return cmd_catalog(o, emit);
        if (*certify) return cmd_certify(o, emit);
        if (*detect_cmd) return cmd_detect(o, emit);
        if (*witness) return cmd_witness(o, emit, err);
        if (*sweep) return cmd_sweep(o, emit);
        if (*appendix) return cmd_appendix(o, emit);
    } catch (const InputError &e) {
        err << "error: " << e.what() << "\n";
        return kInputError;
    } catch (const std::invalid_argument &e) {
        err << "error: " << e.what() << "\n";
        return kInputError;
    } catch (const json::exception &e) {
        err << "error: " << e.what() << "\n";
        return kInputError;
    }
    return kInputError;
}

}  // namespace witness_forge::cli
