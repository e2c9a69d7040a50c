#include "witness_forge/catalog.h"

#include <cmath>
#include <sstream>
#include <stdexcept>

#include "witness_forge/contraction.h"

namespace witness_forge {

namespace {

[[noreturn]] void bad(const std::string &name, const std::string &why) {
    throw std::invalid_argument(name + ": " + why);
}

void need(const std::string &name, const std::vector<double> &p, std::size_t n) {
    if (p.size() != n) {
        std::ostringstream msg;
        msg << "expected " << n << " parameter" << (n == 1 ? "" : "s") << ", got " << p.size();
        bad(name, msg.str());
    }
}

std::size_t as_dim(const std::string &name, double x, std::size_t min) {
    if (!(x >= static_cast<double>(min)) || x != std::floor(x) || x > 64.0) {
        std::ostringstream msg;
        msg << "dimension parameter must be an integer in [" << min << ", 64], got " << x;
        bad(name, msg.str());
    }
    return static_cast<std::size_t>(x);
}

}  // namespace

const std::vector<CatalogEntry> &catalog_entries() {
    static const std::vector<CatalogEntry> entries = {
        {"choi-abc", "a b c", "d = 3 circulant (a, b, c)/(a+b+c), off-diagonal 1/(a+b+c)"},
        {"tau-dk", "d k", "(d-k) eps(X) + Sum_{i<=k} eps(s^i X s^*i) - X"},
        {"phi-dk", "d k", "tau-dk / (d-1)"},
        {"phi-p", "p0 p1 .. pd", "p0 on the diagonal, p_j on the cyclic subdiagonal"},
        {"cyclic", "alpha0 .. alpha(d-1)", "circulant bistochastic a, off-diagonal 1/(d-1)"},
        {"lambda-id", "d lambda", "(lambda + 1) eps(X) - X"},
        {"rotation-family", "d lambda angles..", "contraction lambda R, R from (d-1)(d-2)/2 Givens angles"},
        {"appendix", "lambda1 lambda2 phi1 phi2", "d = 3 contraction R(phi1) diag(lambda1, lambda2) R(phi2)"},
        {"robertson4", "", "Robertson's map on M_4"},
        {"epsilon", "d", "X -> diag(X)"},
        {"transpose", "d", "X -> X^T"},
        {"identity", "d", "X -> X"},
    };
    return entries;
}

NamedMap named_from_gen(std::string name, std::vector<double> params, GenMap m) {
    MapRep rep = from_gen(m);
    return NamedMap{std::move(name), std::move(params), std::move(m), std::move(rep)};
}

NamedMap named_from_rep(std::string name, std::vector<double> params, MapRep m) {
    return NamedMap{std::move(name), std::move(params), std::nullopt, std::move(m)};
}

NamedMap build_catalog(const std::string &name, const std::vector<double> &p) {
    for (double x : p)
        if (!std::isfinite(x)) bad(name, "parameters must be finite");

    if (name == "choi-abc") {
        need(name, p, 3);
        return named_from_gen(name, p, choi_abc(p[0], p[1], p[2]));
    }
    if (name == "tau-dk" || name == "phi-dk") {
        need(name, p, 2);
        const std::size_t d = as_dim(name, p[0], 2);
        if (p[1] < 0.0 || p[1] != std::floor(p[1]) || p[1] > static_cast<double>(d - 1))
            bad(name, "k must be an integer in [0, d-1]");
        const auto k = static_cast<std::size_t>(p[1]);
        return named_from_gen(name, p, name == "tau-dk" ? tau_dk(d, k) : phi_dk(d, k));
    }
    if (name == "phi-p") {
        if (p.size() < 3) bad(name, "expected p0 p1 .. pd with d >= 2");
        return named_from_gen(name, p, phi_p(p));
    }
    if (name == "cyclic") {
        if (p.size() < 2) bad(name, "expected at least two alpha values");
        return named_from_gen(name, p, cyclic_gen_b(CyclicSpec(p)));
    }
    if (name == "lambda-id") {
        need(name, p, 2);
        return named_from_gen(name, p, lambda_identity(as_dim(name, p[0], 1), p[1]));
    }
    if (name == "rotation-family") {
        if (p.size() < 2) bad(name, "expected d lambda angles..");
        const std::size_t d = as_dim(name, p[0], 2);
        std::vector<double> angles(p.begin() + 2, p.end());
        return named_from_gen(name, p, rotation_family_a(rotation_from_givens(d - 1, angles), p[1], d));
    }
    if (name == "appendix") {
        need(name, p, 4);
        return named_from_gen(name, p, appendix_d3(p[0], p[1], p[2], p[3]));
    }
    if (name == "robertson4") {
        need(name, p, 0);
        return named_from_rep(name, p, robertson4());
    }
    if (name == "epsilon" || name == "transpose" || name == "identity") {
        need(name, p, 1);
        const std::size_t d = as_dim(name, p[0], 1);
        if (name == "epsilon") return named_from_rep(name, p, epsilon_map(d));
        if (name == "transpose") return named_from_rep(name, p, transpose_map(d));
        return named_from_rep(name, p, identity_map(d));
    }
    throw std::invalid_argument("unknown catalog name '" + name + "'");
}

}  // namespace witness_forge
