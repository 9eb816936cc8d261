// report.hpp
//
// Batch jobs: a JSON job file names an LG pair, a set of branes and the
// computations to run; run_job produces a JSON report whose only
// run-dependent part is the "timing" object. Groebner bases and Hom
// cohomology sections can be cached on disk; cached entries are re-verified
// before use and silently recomputed when they fail.

#pragma once

#include "lgtft/koszul.hpp"
#include "lgtft/parser.hpp"
#include "lgtft/tft.hpp"

#include <nlohmann/json.hpp>

#include <chrono>
#include <cstdint>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <map>
#include <optional>
#include <set>
#include <sstream>
#include <stdexcept>
#include <string>
#include <vector>

#ifndef LGTFT_VERSION
#define LGTFT_VERSION "0.0.0"
#endif

namespace lgtft {

using Json = nlohmann::ordered_json;

inline constexpr int report_schema_version = 1;

/// A job file that cannot be run as written; `field` is the dotted path of the culprit.
class JobError : public std::runtime_error {
public:
    JobError(std::string field, const std::string& message)
        : std::runtime_error(field + ": " + message), field_(std::move(field)) {}
    const std::string& field() const { return field_; }

private:
    std::string field_;
};

struct BraneSpec {
    std::string name;
    bool koszul = false;
    std::vector<std::pair<std::string, std::string>> pairs;
    std::size_t rank0 = 0, rank1 = 0;
    std::vector<std::vector<std::string>> d01, d10;
};

struct JobSpec {
    std::vector<std::string> variables;
    std::string W;
    std::optional<std::vector<int>> weights;
    std::vector<BraneSpec> branes;
    std::set<std::string> compute;
    std::vector<std::pair<std::string, std::string>> homs;
    std::vector<std::string> tft_branes;
    std::optional<long> degree_bound;
    std::optional<Scalar> c_d;
    Scalar bulk_normalization{1};
    std::optional<std::string> output;

    bool wants(const std::string& what) const { return compute.count(what) > 0; }
};

namespace detail {

template <typename T>
T get_as(const Json& j, const std::string& field, const char* what) {
    try {
        return j.get<T>();
    } catch (const nlohmann::json::exception&) {
        throw JobError(field, std::string("expected ") + what);
    }
}

inline std::vector<std::string> string_list(const Json& j, const std::string& field) {
    if (!j.is_array()) throw JobError(field, "expected a list of strings");
    std::vector<std::string> out;
    for (std::size_t k = 0; k < j.size(); ++k)
        out.push_back(get_as<std::string>(j[k], field + "[" + std::to_string(k) + "]", "a string"));
    return out;
}

inline std::vector<std::vector<std::string>> string_matrix(const Json& j, const std::string& field, std::size_t rows,
                                                           std::size_t cols) {
    if (!j.is_array() || j.size() != rows)
        throw JobError(field, "expected " + std::to_string(rows) + " rows of " + std::to_string(cols) + " entries");
    std::vector<std::vector<std::string>> out;
    for (std::size_t r = 0; r < rows; ++r) {
        auto row = string_list(j[r], field + "[" + std::to_string(r) + "]");
        if (row.size() != cols) throw JobError(field + "[" + std::to_string(r) + "]", "expected " + std::to_string(cols) + " entries");
        out.push_back(std::move(row));
    }
    return out;
}

inline void only_keys(const Json& j, const std::string& field, std::initializer_list<const char*> allowed) {
    for (const auto& [key, value] : j.items()) {
        bool ok = false;
        for (auto a : allowed) ok = ok || key == a;
        if (!ok) throw JobError(field.empty() ? key : field + "." + key, "unknown field");
    }
}

inline Scalar parse_rational(const std::string& text, const std::string& field) {
    try {
        return Scalar::rational(text);
    } catch (const std::exception&) {
        throw JobError(field, "expected a rational number, got '" + text + "'");
    }
}

}  // namespace detail

inline JobSpec parse_job(const Json& j) {
    using namespace detail;
    if (!j.is_object()) throw JobError("job", "expected a JSON object");
    only_keys(j, "", {"variables", "W", "weights", "branes", "compute", "homs", "tft_branes", "degree_bound",
                      "normalization", "output"});
    JobSpec spec;
    if (!j.contains("variables")) throw JobError("variables", "missing");
    spec.variables = string_list(j["variables"], "variables");
    if (!j.contains("W")) throw JobError("W", "missing");
    spec.W = get_as<std::string>(j["W"], "W", "a polynomial string");
    if (j.contains("weights")) spec.weights = get_as<std::vector<int>>(j["weights"], "weights", "a list of integers");

    if (j.contains("branes")) {
        if (!j["branes"].is_object()) throw JobError("branes", "expected an object of named factorizations");
        for (const auto& [name, b] : j["branes"].items()) {
            const std::string field = "branes." + name;
            if (!b.is_object()) throw JobError(field, "expected an object");
            BraneSpec bs;
            bs.name = name;
            if (b.contains("koszul")) {
                only_keys(b, field, {"koszul"});
                bs.koszul = true;
                const auto& list = b["koszul"];
                if (!list.is_array() || list.empty()) throw JobError(field + ".koszul", "expected a list of [a, b] pairs");
                for (std::size_t k = 0; k < list.size(); ++k) {
                    auto pr = string_list(list[k], field + ".koszul[" + std::to_string(k) + "]");
                    if (pr.size() != 2) throw JobError(field + ".koszul[" + std::to_string(k) + "]", "expected [a, b]");
                    bs.pairs.emplace_back(pr[0], pr[1]);
                }
            } else {
                only_keys(b, field, {"rank0", "rank1", "D01", "D10"});
                for (auto key : {"rank0", "rank1", "D01", "D10"})
                    if (!b.contains(key)) throw JobError(field + "." + key, "missing");
                bs.rank0 = get_as<std::size_t>(b["rank0"], field + ".rank0", "a non-negative integer");
                bs.rank1 = get_as<std::size_t>(b["rank1"], field + ".rank1", "a non-negative integer");
                bs.d01 = string_matrix(b["D01"], field + ".D01", bs.rank1, bs.rank0);
                bs.d10 = string_matrix(b["D10"], field + ".D10", bs.rank0, bs.rank1);
            }
            spec.branes.push_back(std::move(bs));
        }
    }
    auto defined = [&](const std::string& name) {
        for (const auto& b : spec.branes)
            if (b.name == name) return true;
        return false;
    };

    std::vector<std::string> compute = j.contains("compute") ? string_list(j["compute"], "compute")
                                                             : std::vector<std::string>{"all"};
    for (const auto& c : compute) {
        if (c == "all") spec.compute.insert({"jacobi", "koszul", "homs", "tft"});
        else if (c == "jacobi" || c == "koszul" || c == "homs" || c == "tft") spec.compute.insert(c);
        else throw JobError("compute", "unknown computation '" + c + "' (expected jacobi, koszul, homs, tft or all)");
    }

    if (j.contains("homs")) {
        const auto& list = j["homs"];
        if (!list.is_array()) throw JobError("homs", "expected a list of [source, target] pairs");
        for (std::size_t k = 0; k < list.size(); ++k) {
            auto pr = string_list(list[k], "homs[" + std::to_string(k) + "]");
            if (pr.size() != 2) throw JobError("homs[" + std::to_string(k) + "]", "expected [source, target]");
            for (const auto& n : pr)
                if (!defined(n)) throw JobError("homs[" + std::to_string(k) + "]", "undefined brane '" + n + "'");
            spec.homs.emplace_back(pr[0], pr[1]);
        }
    } else {
        for (const auto& a : spec.branes)
            for (const auto& b : spec.branes) spec.homs.emplace_back(a.name, b.name);
    }
    if (j.contains("tft_branes")) {
        spec.tft_branes = string_list(j["tft_branes"], "tft_branes");
        for (const auto& n : spec.tft_branes)
            if (!defined(n)) throw JobError("tft_branes", "undefined brane '" + n + "'");
    } else {
        for (const auto& b : spec.branes) spec.tft_branes.push_back(b.name);
    }

    if (j.contains("degree_bound")) {
        long b = get_as<long>(j["degree_bound"], "degree_bound", "an integer");
        if (b < 0) throw JobError("degree_bound", "must be non-negative");
        spec.degree_bound = b;
    }
    if (j.contains("normalization")) {
        const auto& n = j["normalization"];
        if (!n.is_object()) throw JobError("normalization", "expected an object");
        only_keys(n, "normalization", {"c_d", "bulk"});
        if (n.contains("c_d"))
            spec.c_d = parse_rational(get_as<std::string>(n["c_d"], "normalization.c_d", "a string"), "normalization.c_d");
        if (n.contains("bulk"))
            spec.bulk_normalization =
                parse_rational(get_as<std::string>(n["bulk"], "normalization.bulk", "a string"), "normalization.bulk");
    }
    if (spec.c_d && spec.c_d->is_zero()) throw JobError("normalization.c_d", "must be nonzero");
    if (spec.bulk_normalization.is_zero()) throw JobError("normalization.bulk", "must be nonzero");
    if (j.contains("output")) spec.output = get_as<std::string>(j["output"], "output", "a path string");
    return spec;
}

inline JobSpec load_job(const std::filesystem::path& path) {
    std::ifstream in(path);
    if (!in) throw JobError("job", "cannot open " + path.string());
    Json j;
    try {
        j = Json::parse(in);
    } catch (const nlohmann::json::parse_error& e) {
        throw JobError("job", std::string("malformed JSON: ") + e.what());
    }
    return parse_job(j);
}

/// The LG pair and branes of a job, with polynomial texts parsed and validated.
struct JobObjects {
    LGPair lg;
    std::vector<Brane> branes;

    const Brane& brane(const std::string& name) const {
        for (const auto& b : branes)
            if (b->name() == name) return b;
        throw JobError("branes", "undefined brane '" + name + "'");
    }
};

namespace detail {

inline Polynomial parse_field(const std::string& text, const RingPtr& ring, const std::string& field) {
    try {
        return parse_polynomial(text, ring);
    } catch (const ParseError& e) {
        throw JobError(field, std::string(e.what()) + " in '" + text + "'");
    }
}

inline PolyMatrix parse_matrix(const std::vector<std::vector<std::string>>& m, std::size_t rows, std::size_t cols,
                               const RingPtr& ring, const std::string& field) {
    PolyMatrix out(ring, rows, cols);
    for (std::size_t r = 0; r < rows; ++r)
        for (std::size_t c = 0; c < cols; ++c)
            out(r, c) = parse_field(m[r][c], ring, field + "[" + std::to_string(r) + "][" + std::to_string(c) + "]");
    return out;
}

}  // namespace detail

inline JobObjects build_objects(const JobSpec& spec) {
    RingPtr ring;
    try {
        ring = make_ring(spec.variables);
    } catch (const std::invalid_argument& e) {
        throw JobError("variables", e.what());
    }
    Polynomial w = detail::parse_field(spec.W, ring, "W");
    std::optional<LGPair> lg;
    try {
        lg.emplace(w, spec.weights);
    } catch (const std::invalid_argument& e) {
        throw JobError(spec.weights ? "weights" : "W", e.what());
    }
    JobObjects out{*lg, {}};
    for (const auto& b : spec.branes) {
        const std::string field = "branes." + b.name;
        try {
            if (b.koszul) {
                std::vector<std::pair<Polynomial, Polynomial>> pairs;
                for (std::size_t k = 0; k < b.pairs.size(); ++k) {
                    auto f = field + ".koszul[" + std::to_string(k) + "]";
                    pairs.emplace_back(detail::parse_field(b.pairs[k].first, ring, f + "[0]"),
                                       detail::parse_field(b.pairs[k].second, ring, f + "[1]"));
                }
                out.branes.push_back(koszul_factorization(*lg, pairs, b.name));
            } else {
                out.branes.push_back(make_factorization(*lg, b.rank0, b.rank1,
                                                        detail::parse_matrix(b.d01, b.rank1, b.rank0, ring, field + ".D01"),
                                                        detail::parse_matrix(b.d10, b.rank0, b.rank1, ring, field + ".D10"),
                                                        b.name));
            }
        } catch (const FactorizationError& e) {
            throw JobError(field, e.what());
        }
    }
    return out;
}

// --- cache --------------------------------------------------------------------

inline std::uint64_t fnv1a(const std::string& s) {
    std::uint64_t h = 14695981039346656037ull;
    for (unsigned char c : s) {
        h ^= c;
        h *= 1099511628211ull;
    }
    return h;
}

/// Directory of JSON entries, one file per key hash. Entries whose stored key differs from
/// the requested key, or that fail to parse, are treated as misses.
class Cache {
public:
    Cache() = default;
    explicit Cache(std::filesystem::path dir) : dir_(std::move(dir)) {}

    static std::filesystem::path default_directory() {
        if (const char* env = std::getenv("LGTFT_CACHE_DIR"); env && *env) return env;
        if (const char* xdg = std::getenv("XDG_CACHE_HOME"); xdg && *xdg) return std::filesystem::path(xdg) / "lgtft";
        if (const char* home = std::getenv("HOME"); home && *home) return std::filesystem::path(home) / ".cache" / "lgtft";
        return std::filesystem::temp_directory_path() / "lgtft-cache";
    }

    bool enabled() const { return dir_.has_value(); }

    std::optional<Json> get(const std::string& kind, const std::string& key) const {
        if (!dir_) return std::nullopt;
        std::ifstream in(file(kind, key));
        if (!in) return std::nullopt;
        try {
            Json j = Json::parse(in);
            if (j.value("key", "") != key || !j.contains("value")) return std::nullopt;
            return j["value"];
        } catch (const std::exception&) {
            return std::nullopt;
        }
    }

    void put(const std::string& kind, const std::string& key, const Json& value) const {
        if (!dir_) return;
        std::error_code ec;
        std::filesystem::create_directories(*dir_, ec);
        if (ec) return;
        auto path = file(kind, key);
        auto tmp = path;
        tmp += ".tmp";
        {
            std::ofstream out(tmp);
            if (!out) return;
            out << Json{{"key", key}, {"value", value}}.dump();
        }
        std::filesystem::rename(tmp, path, ec);
    }

    /// Removes every cache entry; returns the number of files deleted.
    std::size_t clear() const {
        if (!dir_ || !std::filesystem::exists(*dir_)) return 0;
        std::size_t n = 0;
        for (const auto& e : std::filesystem::directory_iterator(*dir_)) {
            auto name = e.path().filename().string();
            if (e.is_regular_file() && name.starts_with("lgtft-") && e.path().extension() == ".json") {
                std::filesystem::remove(e.path());
                ++n;
            }
        }
        return n;
    }

private:
    std::filesystem::path file(const std::string& kind, const std::string& key) const {
        char hex[17];
        std::snprintf(hex, sizeof hex, "%016llx", static_cast<unsigned long long>(fnv1a(key)));
        return *dir_ / ("lgtft-" + kind + "-" + hex + ".json");
    }

    std::optional<std::filesystem::path> dir_;
};

// --- report sections ------------------------------------------------------------

namespace detail {

inline Json strings(const std::vector<Scalar>& v) {
    Json out = Json::array();
    for (const auto& s : v) out.push_back(s.str());
    return out;
}

inline Json polys(const std::vector<Polynomial>& v) {
    Json out = Json::array();
    for (const auto& p : v) out.push_back(p.str());
    return out;
}

inline Json matrix_json(const PolyMatrix& m) { return Json(m.to_strings()); }

inline std::string lg_key(const LGPair& lg) {
    std::string k;
    for (std::size_t i = 0; i < lg.ring()->size(); ++i) k += lg.ring()->name(i) + ",";
    k += "|" + lg.W().str() + "|";
    if (auto g = lg.grading())
        for (int w : *g) k += std::to_string(w) + ",";
    return k;
}

inline std::string brane_key(const MatrixFactorization& a) {
    std::string k = std::to_string(a.rank0()) + "|" + std::to_string(a.rank1()) + "|";
    for (const auto* m : {&a.d01(), &a.d10()})
        for (const auto& row : m->to_strings())
            for (const auto& e : row) k += e + ";";
    return k;
}

inline Json monomial_strings(const RingPtr& ring, const std::vector<Monomial>& ms) {
    Json out = Json::array();
    for (const auto& m : ms) out.push_back(Polynomial::monomial(ring, m).str());
    return out;
}

inline std::string parity_name(int p) { return p ? "odd" : "even"; }

}  // namespace detail

struct RunContext {
    Cache cache;
    bool cache_hits_verified = true;
};

inline std::optional<GroebnerBasis> cached_jacobian_basis(const LGPair& lg, const Cache& cache) {
    const std::string key = std::string("groebner|") + LGTFT_VERSION + "|" + GroebnerBasis::order() + "|" +
                            detail::lg_key(lg) + "|" + detail::polys(lg.gradient()).dump();
    if (auto hit = cache.get("groebner", key)) {
        try {
            std::vector<Polynomial> gens;
            for (const auto& s : *hit) gens.push_back(parse_polynomial(s.get<std::string>(), lg.ring()));
            GroebnerBasis gb(lg.ring(), gens);
            if (verify_groebner_basis(gb, lg.gradient())) return gb;
        } catch (const std::exception&) {
        }
    }
    auto gb = jacobian_ideal_basis(lg);
    cache.put("groebner", key, detail::polys(gb.generators()));
    return gb;
}

inline Json jacobi_section(const LGPair& lg, const JobSpec& spec, const Cache& cache) {
    Json out;
    auto gb = *cached_jacobian_basis(lg, cache);
    out["groebner_basis"] = detail::polys(gb.generators());
    out["order"] = GroebnerBasis::order();
    if (!has_finite_staircase(gb)) {
        out["isolated"] = false;
        out["diagnostic"] = "critical set of W is not finite; the Jacobi algebra is infinite-dimensional and the "
                            "residue pairing is unavailable (see the koszul section for negative-degree cohomology)";
        return out;
    }
    auto jac = jacobi_algebra(lg, gb);
    out["isolated"] = true;
    out["milnor_number"] = jac.dimension();
    out["basis"] = detail::monomial_strings(lg.ring(), jac.basis());
    if (jac.dimension() == 0) return out;
    auto tr = residue_trace(jac, lg, spec.bulk_normalization);
    Json t;
    t["normalization"] = spec.bulk_normalization.str();
    t["values"] = detail::strings(tr.values);
    t["hessian"] = tr(jac.coordinates(hessian_determinant(lg))).str();
    out["trace"] = t;
    return out;
}

inline long default_koszul_bound(const LGPair& lg) {
    auto g = lg.grading();
    std::vector<int> w = g ? *g : std::vector<int>(lg.dimension(), 1);
    long top = 0;
    try {
        auto jac = jacobi_algebra(lg);
        for (const auto& m : jac.basis()) top = std::max(top, weighted_degree(m, w));
    } catch (const NonIsolatedCriticalSet&) {
        top = 0;
    }
    long dw = g ? lg.weighted_degree_of_W() : lg.W().degree();
    return top + dw + 2;
}

inline Json koszul_section(const LGPair& lg, const JobSpec& spec) {
    const long bound = spec.degree_bound ? *spec.degree_bound : default_koszul_bound(lg);
    KoszulComplex complex(lg);
    auto table = koszul_cohomology(complex, bound);
    Json out;
    out["graded"] = table.graded;
    out["degree_bound"] = bound;
    out["weights"] = table.weights;
    Json rows = Json::array();
    for (std::size_t p = 0; p < table.dims.size(); ++p) {
        Json row;
        row["k"] = -static_cast<int>(p);
        row["dims"] = table.dims[p];
        row["total"] = table.total(-static_cast<int>(p));
        row["stabilized"] = static_cast<bool>(table.stabilized[p]);
        rows.push_back(row);
    }
    out["cohomology"] = rows;
    auto vanishing = check_vanishing_negative_degrees(complex, bound);
    out["negative_degrees_vanish"] = vanishing.vanishes;
    if (vanishing.witness) {
        Json w;
        w["k"] = vanishing.witness->k;
        w["internal_degree"] = vanishing.witness->internal_degree;
        Json comps = Json::array();
        const auto p = static_cast<std::size_t>(-vanishing.witness->k);
        for (std::size_t i = 0; i < vanishing.witness->components.size(); ++i)
            comps.push_back({{"wedge", complex.wedge_label(p, i)}, {"coefficient", vanishing.witness->components[i].str()}});
        w["components"] = comps;
        out["witness"] = w;
    }
    if (!table.note.empty()) out["note"] = table.note;
    return out;
}

inline Json hom_json(const HomCohomology& h) {
    Json out;
    out["source"] = h.source()->name();
    out["target"] = h.target()->name();
    out["graded"] = h.graded();
    out["finite"] = h.finite();
    out["degree_bound"] = h.degree_bound();
    out["dim_even"] = h.dim(0);
    out["dim_odd"] = h.dim(1);
    if (h.graded()) {
        Json table = Json::array();
        for (const auto& [key, dim] : h.dimension_table())
            table.push_back({{"degree", half_units(key.first)}, {"parity", detail::parity_name(key.second)}, {"dim", dim}});
        out["table"] = table;
        Json basis = Json::array();
        for (std::size_t k = 0; k < h.basis().size(); ++k)
            basis.push_back({{"degree", half_units(h.degree2_of(k))},
                             {"parity", detail::parity_name(h.parity_of(k))},
                             {"representative", detail::matrix_json(h.representative(k))}});
        out["basis"] = basis;
    }
    if (!h.note().empty()) out["note"] = h.note();
    return out;
}

/// A cached Hom section is used only if the complex squares to zero and every stored
/// representative is a cocycle of the right shape.
inline bool verify_cached_hom(const Json& j, const Brane& a, const Brane& b) {
    try {
        HomComplex complex(a, b);
        if (!complex.squares_to_zero()) return false;
        if (j.at("source") != a->name() || j.at("target") != b->name()) return false;
        if (!j.at("graded").get<bool>()) return true;
        std::size_t dims = j.at("dim_even").get<std::size_t>() + j.at("dim_odd").get<std::size_t>();
        if (j.at("basis").size() != dims) return false;
        for (const auto& e : j.at("basis")) {
            const auto& rows = e.at("representative");
            if (rows.size() != complex.rows()) return false;
            PolyMatrix f(complex.ring(), complex.rows(), complex.cols());
            for (std::size_t r = 0; r < complex.rows(); ++r) {
                if (rows[r].size() != complex.cols()) return false;
                for (std::size_t c = 0; c < complex.cols(); ++c) f(r, c) = parse_polynomial(rows[r][c].get<std::string>(), complex.ring());
            }
            if (!complex.is_cocycle(f)) return false;
        }
        return true;
    } catch (const std::exception&) {
        return false;
    }
}

inline Json hom_section(const Brane& a, const Brane& b, const JobSpec& spec, const Cache& cache) {
    const std::string key = std::string("hom|") + LGTFT_VERSION + "|" + detail::lg_key(a->lg()) + "|" + a->name() + "=" +
                            detail::brane_key(*a) + "|" + b->name() + "=" + detail::brane_key(*b) + "|" +
                            (spec.degree_bound ? std::to_string(*spec.degree_bound) : "default");
    if (auto hit = cache.get("hom", key))
        if (verify_cached_hom(*hit, a, b)) return *hit;
    auto out = hom_json(hom_cohomology(a, b, spec.degree_bound));
    cache.put("hom", key, out);
    return out;
}

inline Json axiom_json(const AxiomReport& report) {
    Json out = Json::array();
    for (const auto& v : report.verdicts) {
        Json e;
        e["axiom"] = v.axiom;
        e["verdict"] = verdict_name(v.verdict);
        if (!v.detail.empty()) e["detail"] = v.detail;
        if (!v.witness.empty()) {
            Json w = Json::object();
            for (const auto& [k, x] : v.witness) w[k] = x;
            e["witness"] = w;
        }
        out.push_back(e);
    }
    return out;
}

inline Json tft_section(const JobObjects& objects, const JobSpec& spec) {
    std::vector<Brane> branes;
    for (const auto& n : spec.tft_branes) branes.push_back(objects.brane(n));
    TFTOptions opts;
    opts.degree_bound = spec.degree_bound;
    opts.c_d = spec.c_d;
    opts.bulk_normalization = spec.bulk_normalization;
    TFTDatum datum(objects.lg, branes, opts);
    Json out;
    out["branes"] = spec.tft_branes;
    out["c_d"] = datum.c_d().str();
    out["bulk_normalization"] = spec.bulk_normalization.str();
    out["trace_parity"] = datum.trace_parity();
    if (datum.has_bulk_pairing()) {
        Json per = Json::object();
        for (std::size_t a = 0; a < branes.size(); ++a) {
            const auto& h = datum.branes().hom(a, a);
            Json e;
            Json traces = Json::array(), bulk = Json::array(), boundary = Json::array();
            for (std::size_t i = 0; i < h.basis().size(); ++i) {
                auto t = h.representative(i);
                traces.push_back(datum.boundary_trace(a, t).str());
                bulk.push_back(detail::strings(datum.boundary_bulk(a, t)));
            }
            for (std::size_t k = 0; k < datum.bulk().dimension(); ++k)
                boundary.push_back(detail::strings(datum.bulk_boundary(a, k)));
            e["boundary_trace"] = traces;
            e["boundary_bulk"] = bulk;
            e["bulk_boundary"] = boundary;
            per[spec.tft_branes[a]] = e;
        }
        out["maps"] = per;
    } else {
        out["bulk_note"] = datum.bulk_note();
    }
    auto report = verify_tft_datum(datum);
    out["axioms"] = axiom_json(report);
    out["cardy_constant"] = report.cardy_constant ? Json(report.cardy_constant->str()) : Json(nullptr);
    out["all_pass"] = report.all_pass();
    return out;
}

inline Json job_echo(const JobSpec& spec, const JobObjects& objects) {
    Json j;
    j["variables"] = spec.variables;
    j["W"] = objects.lg.W().str();
    if (auto g = objects.lg.grading()) j["weights"] = *g;
    else j["weights"] = nullptr;
    Json branes = Json::object();
    for (const auto& b : objects.branes) {
        Json e;
        e["rank0"] = b->rank0();
        e["rank1"] = b->rank1();
        e["D01"] = detail::matrix_json(b->d01());
        e["D10"] = detail::matrix_json(b->d10());
        e["graded"] = b->weights2().has_value();
        branes[b->name()] = e;
    }
    j["branes"] = branes;
    j["compute"] = Json(std::vector<std::string>(spec.compute.begin(), spec.compute.end()));
    j["degree_bound"] = spec.degree_bound ? Json(*spec.degree_bound) : Json(nullptr);
    j["normalization"] = {{"c_d", spec.c_d ? spec.c_d->str() : inverse_factorial(objects.lg.dimension()).str()},
                          {"bulk", spec.bulk_normalization.str()}};
    return j;
}

struct RunResult {
    Json report;
    bool hard_error = false;
};

/// Runs every requested section. Validation problems throw JobError; failures inside a
/// section are recorded under that section's "error" key and mark the run as failed.
inline RunResult run_job(const JobSpec& spec, const Cache& cache = {}) {
    using clock = std::chrono::steady_clock;
    auto objects = build_objects(spec);
    if (spec.wants("tft"))
        for (const auto& n : spec.tft_branes)
            if (!objects.brane(n)->weights2())
                throw JobError("tft_branes", "brane '" + n + "' is not graded; TFT assembly needs graded factorizations");

    RunResult result;
    Json& r = result.report;
    r["schema_version"] = report_schema_version;
    r["tool"] = {{"name", "lgtft"}, {"version", LGTFT_VERSION}};
    r["job"] = job_echo(spec, objects);
    Json timing = Json::object();
    auto section = [&](const std::string& name, auto&& body) {
        auto t0 = clock::now();
        try {
            r[name] = body();
        } catch (const std::exception& e) {
            r[name] = {{"error", e.what()}};
            result.hard_error = true;
        }
        timing[name + "_ms"] = std::chrono::duration<double, std::milli>(clock::now() - t0).count();
    };
    if (spec.wants("jacobi")) section("jacobi", [&] { return jacobi_section(objects.lg, spec, cache); });
    if (spec.wants("koszul")) section("koszul", [&] { return koszul_section(objects.lg, spec); });
    if (spec.wants("homs"))
        section("homs", [&] {
            Json list = Json::array();
            for (const auto& [a, b] : spec.homs) list.push_back(hom_section(objects.brane(a), objects.brane(b), spec, cache));
            return list;
        });
    if (spec.wants("tft")) section("tft", [&] { return tft_section(objects, spec); });
    r["timing"] = timing;
    return result;
}

// --- diffs ------------------------------------------------------------------------

struct DiffEntry {
    std::string path;
    Json left;
    Json right;
};

class SchemaMismatch : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

namespace detail {

inline void diff_into(const Json& a, const Json& b, const std::string& path, std::vector<DiffEntry>& out) {
    if (a.is_object() && b.is_object()) {
        std::set<std::string> keys;
        for (const auto& [k, v] : a.items()) keys.insert(k);
        for (const auto& [k, v] : b.items()) keys.insert(k);
        for (const auto& k : keys) {
            if (path.empty() && k == "timing") continue;
            auto sub = path.empty() ? k : path + "." + k;
            if (!a.contains(k)) out.push_back({sub, nullptr, b[k]});
            else if (!b.contains(k)) out.push_back({sub, a[k], nullptr});
            else diff_into(a[k], b[k], sub, out);
        }
        return;
    }
    if (a.is_array() && b.is_array()) {
        const auto n = std::max(a.size(), b.size());
        for (std::size_t k = 0; k < n; ++k) {
            auto sub = path + "[" + std::to_string(k) + "]";
            if (k >= a.size()) out.push_back({sub, nullptr, b[k]});
            else if (k >= b.size()) out.push_back({sub, a[k], nullptr});
            else diff_into(a[k], b[k], sub, out);
        }
        return;
    }
    if (a != b) out.push_back({path, a, b});
}

}  // namespace detail

/// Field-level differences between two reports, ignoring the top-level "timing" object.
inline std::vector<DiffEntry> diff_reports(const Json& r1, const Json& r2) {
    auto version = [](const Json& r) { return r.is_object() && r.contains("schema_version") ? r["schema_version"] : Json(); };
    if (version(r1).is_null() || version(r2).is_null()) throw SchemaMismatch("report without schema_version");
    if (version(r1) != version(r2))
        throw SchemaMismatch("schema version mismatch: " + version(r1).dump() + " vs " + version(r2).dump());
    std::vector<DiffEntry> out;
    detail::diff_into(r1, r2, "", out);
    return out;
}

/// Deterministic serialization: the report without timing.
inline std::string stable_dump(Json report) {
    report.erase("timing");
    return report.dump(2);
}

// --- human-readable summary ------------------------------------------------------------

inline std::string render_summary(const Json& r) {
    std::ostringstream s;
    const auto& job = r["job"];
    s << "W = " << job["W"].get<std::string>() << " in " << job["variables"].size() << " variable(s)\n";
    if (r.contains("jacobi")) {
        const auto& j = r["jacobi"];
        if (j.contains("error")) s << "jacobi: error: " << j["error"].get<std::string>() << "\n";
        else if (!j["isolated"].get<bool>()) s << "jacobi: critical set not isolated\n";
        else {
            s << "jacobi: milnor number " << j["milnor_number"] << ", basis";
            for (const auto& m : j["basis"]) s << " " << m.get<std::string>();
            s << "\n";
        }
    }
    if (r.contains("koszul")) {
        const auto& k = r["koszul"];
        if (k.contains("error")) s << "koszul: error: " << k["error"].get<std::string>() << "\n";
        else {
            s << "koszul (bound " << k["degree_bound"] << (k["graded"].get<bool>() ? ", graded" : ", filtered") << "):";
            for (const auto& row : k["cohomology"]) s << " H^" << row["k"] << "=" << row["total"];
            s << (k["negative_degrees_vanish"].get<bool>() ? ", negative degrees vanish" : ", negative-degree class found")
              << "\n";
        }
    }
    if (r.contains("homs")) {
        const auto& h = r["homs"];
        if (h.is_object() && h.contains("error")) s << "homs: error: " << h["error"].get<std::string>() << "\n";
        else
            for (const auto& e : h)
                s << "Hom(" << e["source"].get<std::string>() << ", " << e["target"].get<std::string>()
                  << "): " << e["dim_even"] << "|" << e["dim_odd"] << (e["finite"].get<bool>() ? "" : " (not stabilized)")
                  << "\n";
    }
    if (r.contains("tft")) {
        const auto& t = r["tft"];
        if (t.contains("error")) s << "tft: error: " << t["error"].get<std::string>() << "\n";
        else {
            for (const auto& a : t["axioms"])
                s << "  " << a["axiom"].get<std::string>() << ": " << a["verdict"].get<std::string>() << "\n";
            s << "cardy constant: " << (t["cardy_constant"].is_null() ? "undetermined" : t["cardy_constant"].get<std::string>())
              << "\n";
        }
    }
    return s.str();
}

}  // namespace lgtft
