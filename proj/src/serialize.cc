#include "witness_forge/serialize.h"

#include <cmath>
#include <cstdio>
#include <cstring>
#include <stdexcept>

namespace witness_forge {

namespace {

json reals(std::span<const double> v) {
    json out = json::array();
    for (double x : v) out.push_back(x);
    return out;
}

const json &field(const json &j, const char *key) {
    if (!j.is_object() || !j.contains(key)) throw std::invalid_argument(std::string("JSON: missing field '") + key + "'");
    return j.at(key);
}

std::vector<double> number_list(const json &j, const char *what) {
    if (!j.is_array()) throw std::invalid_argument(std::string("JSON: '") + what + "' must be an array");
    std::vector<double> out;
    out.reserve(j.size());
    for (const auto &x : j) {
        if (!x.is_number()) throw std::invalid_argument(std::string("JSON: '") + what + "' must hold numbers");
        out.push_back(x.get<double>());
    }
    return out;
}

std::size_t dimension(const json &j) {
    if (!j.is_number_integer() || j.get<long long>() <= 0) throw std::invalid_argument("JSON: dimension must be a positive integer");
    return j.get<std::size_t>();
}

json pairs_to_object(const std::vector<std::pair<std::string, double>> &pairs) {
    json out = json::object();
    for (const auto &[k, v] : pairs) out[k] = v;
    return out;
}

void emit(const json &j, int indent, int depth, std::string &out) {
    const std::string pad(static_cast<std::size_t>(indent * (depth + 1)), ' ');
    const std::string close_pad(static_cast<std::size_t>(indent * depth), ' ');
    switch (j.type()) {
        case json::value_t::number_float: {
            const double v = j.get<double>();
            if (!std::isfinite(v)) {
                out += "null";
                break;
            }
            char buf[40];
            std::snprintf(buf, sizeof buf, "%.17g", v);
            out += buf;
            // Keep floats recognizable as floats.
            if (std::strpbrk(buf, ".eEn") == nullptr) out += ".0";
            break;
        }
        case json::value_t::array: {
            if (j.empty()) {
                out += "[]";
                break;
            }
            // Numeric rows stay on one line.
            bool flat = true;
            for (const auto &x : j) flat = flat && x.is_primitive();
            out += "[";
            bool first = true;
            for (const auto &x : j) {
                out += first ? "" : ",";
                if (flat) {
                    out += first ? "" : " ";
                } else {
                    out += "\n" + pad;
                }
                emit(x, indent, depth + 1, out);
                first = false;
            }
            out += flat ? "]" : "\n" + close_pad + "]";
            break;
        }
        case json::value_t::object: {
            if (j.empty()) {
                out += "{}";
                break;
            }
            out += "{";
            bool first = true;
            for (const auto &[k, v] : j.items()) {
                out += (first ? "\n" : ",\n") + pad + json(k).dump() + ": ";
                emit(v, indent, depth + 1, out);
                first = false;
            }
            out += "\n" + close_pad + "}";
            break;
        }
        default: out += j.dump();
    }
}

}  // namespace

std::string dump17(const json &j, int indent) {
    std::string out;
    emit(j, indent, 0, out);
    out += "\n";
    return out;
}

json to_json(const CMatrix &m) {
    json re = json::array(), im = json::array();
    for (std::size_t i = 0; i < m.dim(); ++i) {
        json rr = json::array(), ii = json::array();
        for (std::size_t j = 0; j < m.dim(); ++j) {
            rr.push_back(m(i, j).real());
            ii.push_back(m(i, j).imag());
        }
        re.push_back(std::move(rr));
        im.push_back(std::move(ii));
    }
    return json{{"dim", m.dim()}, {"re", std::move(re)}, {"im", std::move(im)}};
}

json to_json(const RealMatrix &m) {
    json rows = json::array();
    for (std::size_t i = 0; i < m.rows(); ++i) {
        json row = json::array();
        for (std::size_t j = 0; j < m.cols(); ++j) row.push_back(m(i, j));
        rows.push_back(std::move(row));
    }
    return rows;
}

json vector_to_json(const std::vector<cplx> &v) {
    json re = json::array(), im = json::array();
    for (const cplx &z : v) {
        re.push_back(z.real());
        im.push_back(z.imag());
    }
    return json{{"re", std::move(re)}, {"im", std::move(im)}};
}

json to_json(const GenMap &m) {
    return json{{"kind", "gen"}, {"d", m.d()}, {"a", to_json(m.a())}, {"c", m.c()}, {"bistochastic", m.bistochastic()}};
}

json to_json(const MapRep &m) {
    json action = json::array();
    for (const auto &x : m.table()) action.push_back(to_json(x));
    return json{{"kind", "table"}, {"d", m.d()}, {"action", std::move(action)}};
}

json to_json(const NamedMap &m) {
    json out = m.gen ? to_json(*m.gen) : to_json(m.rep);
    out["name"] = m.name;
    out["params"] = reals(m.params);
    return out;
}

json to_json(const Certificate &c) {
    json evidence{{"lambda_min", c.lambda_min}, {"tolerance", c.tolerance}};
    if (!c.witness_vector.empty()) evidence["witness_vector"] = vector_to_json(c.witness_vector);
    for (const auto &[k, v] : c.evidence) evidence[k] = v;
    if (!c.budget.empty()) evidence["budget"] = pairs_to_object(c.budget);
    return json{{"property", c.property}, {"verdict", c.verdict}, {"holds", c.holds}, {"evidence", std::move(evidence)}};
}

json to_json(const PositivityVerdict &v) {
    json evidence{{"min_value", v.min_value}, {"tolerance", v.tolerance}, {"method", v.method},
                  {"probe_only", v.probe_only}};
    if (!v.argmin_simplex.empty()) evidence["argmin_simplex"] = reals(v.argmin_simplex);
    if (!v.witness_vector.empty()) {
        evidence["witness_vector"] = vector_to_json(v.witness_vector);
        evidence["witness_eigenvalue"] = v.witness_eigenvalue;
    }
    return json{{"property", "positive"}, {"verdict", to_string(v.verdict)}, {"holds", v.positive()},
                {"evidence", std::move(evidence)}};
}

json to_json(const Witness &w) {
    json out{{"source_map", w.source}, {"d", w.d},           {"valid", w.valid},
             {"lambda_min", w.lambda_min}, {"product_min", w.product_min}};
    if (w.epsilon != 0.0) out["epsilon"] = w.epsilon;
    out["w"] = to_json(w.w.matrix());
    return out;
}

json to_json(const IndecompCertificate &c) {
    json out{{"map", to_json(c.map)},
             {"alpha", reals(c.alpha)},
             {"a", c.a},
             {"pairing", c.pairing},
             {"pairing_choi", c.pairing_choi},
             {"expected_pairing", c.expected_pairing},
             {"rho_lambda_min", c.rho_lambda_min},
             {"ppt_lambda_min", c.ppt_lambda_min},
             {"case", to_string(c.theorem4)},
             {"positivity", to_json(c.positivity)},
             {"verdict", c.verdict}};
    if (!c.failed_gate.empty()) {
        out["gate"] = c.failed_gate;
        out["detail"] = c.detail;
    }
    return out;
}

CMatrix cmatrix_from_json(const json &j) {
    const std::size_t n = dimension(field(j, "dim"));
    // Accepts nested rows or a flat row-major list.
    auto entries_of = [n](const json &part, const char *what) {
        std::vector<double> flat;
        if (part.is_array() && !part.empty() && part.at(0).is_array()) {
            for (const auto &row : part) {
                const auto r = number_list(row, what);
                flat.insert(flat.end(), r.begin(), r.end());
            }
        } else {
            flat = number_list(part, what);
        }
        if (flat.size() != n * n) throw std::invalid_argument("JSON: matrix needs dim*dim entries");
        return flat;
    };
    const auto re = entries_of(field(j, "re"), "re");
    const auto im = j.contains("im") ? entries_of(j.at("im"), "im") : std::vector<double>(n * n, 0.0);
    std::vector<cplx> entries(n * n);
    for (std::size_t k = 0; k < n * n; ++k) entries[k] = cplx(re[k], im[k]);
    return CMatrix(n, std::move(entries));
}

RealMatrix realmatrix_from_json(const json &j) {
    if (!j.is_array() || j.empty()) throw std::invalid_argument("JSON: matrix must be a non-empty array of rows");
    const std::size_t rows = j.size();
    const std::size_t cols = j.at(0).is_array() ? j.at(0).size() : 0;
    std::vector<double> data;
    for (const auto &row : j) {
        const auto r = number_list(row, "row");
        if (r.size() != cols) throw std::invalid_argument("JSON: ragged matrix");
        data.insert(data.end(), r.begin(), r.end());
    }
    return RealMatrix(rows, cols, std::move(data));
}

NamedMap map_from_json(const json &j) {
    const json &kind = field(j, "kind");
    if (!kind.is_string()) throw std::invalid_argument("JSON: 'kind' must be a string");
    const std::string k = kind.get<std::string>();
    const std::string name = j.contains("name") && j.at("name").is_string() ? j.at("name").get<std::string>() : k;
    if (k == "catalog") {
        const json &n = field(j, "name");
        if (!n.is_string()) throw std::invalid_argument("JSON: catalog 'name' must be a string");
        std::vector<double> params;
        if (j.contains("params")) params = number_list(j.at("params"), "params");
        return build_catalog(n.get<std::string>(), params);
    }
    if (k == "gen") {
        const std::size_t d = dimension(field(j, "d"));
        const json &c = field(j, "c");
        if (!c.is_number()) throw std::invalid_argument("JSON: 'c' must be a number");
        return named_from_gen(name, {}, GenMap(d, realmatrix_from_json(field(j, "a")), c.get<double>()));
    }
    if (k == "table") {
        const std::size_t d = dimension(field(j, "d"));
        const json &action = field(j, "action");
        if (!action.is_array()) throw std::invalid_argument("JSON: 'action' must be an array");
        std::vector<CMatrix> table;
        for (const auto &m : action) table.push_back(cmatrix_from_json(m));
        return named_from_rep(name, {}, MapRep(d, std::move(table)));
    }
    throw std::invalid_argument("JSON: unknown map kind '" + k + "'");
}

}  // namespace witness_forge
