#ifndef DBV_IO_HPP
#define DBV_IO_HPP

#include <cstdint>
#include <cstdio>
#include <fstream>
#include <sstream>
#include <stdexcept>
#include <string>
#include <variant>
#include <vector>

#include <json.hpp>

#include "errors.hpp"
#include "finite_dbv.hpp"
#include "homology.hpp"
#include "landau_ginzburg.hpp"
#include "series.hpp"
#include "solver.hpp"

namespace dbv {

using Json = nlohmann::ordered_json;

/// Malformed or inconsistent input file.
struct InputError : std::invalid_argument
{
    using std::invalid_argument::invalid_argument;
};

using AnyAlgebra = std::variant<FiniteDimDBV, LandauGinzburgDBV>;

template <DBVBackend A>
Json vector_to_json(const A &alg, const Vector &v)
{
    Json out = Json::object();
    for (const auto &[i, c] : v) {
        out[alg.name(i)] = to_string(c);
    }
    return out;
}

inline Scalar scalar_from_json(const Json &j)
{
    if (j.is_string()) {
        return parse_scalar(j.get<std::string>());
    }
    if (j.is_number_integer()) {
        return Scalar(j.get<long>());
    }
    throw InputError("expected a rational \"num/den\", got " + j.dump());
}

template <DBVBackend A>
Vector vector_from_json(const A &alg, const Json &j)
{
    if (!j.is_object()) {
        throw InputError("expected a vector object {basis_name: \"num/den\"}, got " + j.dump());
    }
    Vector v;
    for (const auto &[name, c] : j.items()) {
        auto idx = alg.find(name);
        if (!idx) {
            throw BasisMismatch("unknown basis element '" + name + "'");
        }
        v.add(*idx, scalar_from_json(c));
    }
    return v;
}

/// Canonical form: records sorted by monomial, t-indices 1-based, signs normalized to +1.
template <DBVBackend A>
Json series_to_json(const A &alg, const Series &s)
{
    Json out = Json::array();
    for (const auto &[m, v] : s.terms()) {
        Json t = Json::array();
        for (int i : m.vars) {
            t.push_back(i + 1);
        }
        out.push_back({{"monomial", {{"t", t}, {"hbar", m.hbar}, {"sign", 1}}}, {"vector", vector_to_json(alg, v)}});
    }
    return out;
}

template <DBVBackend A>
Series series_from_json(const A &alg, const Json &j, const VariableSet &vs, Truncation trunc)
{
    if (!j.is_array()) {
        throw InputError("series must be a list of records");
    }
    Series s(vs, trunc);
    for (const auto &rec : j) {
        if (!rec.is_object() || !rec.contains("monomial") || !rec.contains("vector")) {
            throw InputError("series record needs 'monomial' and 'vector'");
        }
        const Json &m = rec.at("monomial");
        std::vector<int> word;
        for (const auto &i : m.value("t", Json::array())) {
            const int k = i.get<int>() - 1;
            if (k < 0 || k >= static_cast<int>(vs.size())) {
                throw BasisMismatch("t-index " + i.dump() + " out of range");
            }
            word.push_back(k);
        }
        const int hbar = m.value("hbar", 0);
        const int sign = m.value("sign", 1);
        if (hbar < 0 || (sign != 1 && sign != -1)) {
            throw InputError("bad monomial " + m.dump());
        }
        SignedMonomial sm = canonicalize(vs, word, hbar);
        sm.sign *= sign;
        s.add_term(sm, vector_from_json(alg, rec.at("vector")));
    }
    return s;
}

inline Json algebra_to_json(const FiniteDimDBV &alg)
{
    Json basis = Json::array();
    for (const auto &e : alg.basis().elements()) {
        basis.push_back({{"name", e.name}, {"degree", e.degree}});
    }
    Json product = Json::array();
    for (const auto &[key, v] : alg.given_product()) {
        if (!v.empty()) {
            product.push_back({alg.name(key.first), alg.name(key.second), vector_to_json(alg, v)});
        }
    }
    auto table = [&](const std::vector<Vector> &t) {
        Json out = Json::array();
        for (std::size_t i = 0; i < t.size(); ++i) {
            if (!t[i].empty()) {
                out.push_back({alg.name(static_cast<BasisIndex>(i)), vector_to_json(alg, t[i])});
            }
        }
        return out;
    };
    return {{"kind", "finite"},
            {"basis", basis},
            {"unit", alg.name(alg.unit())},
            {"product", product},
            {"Q", table(alg.q_table())},
            {"Delta", table(alg.delta_table())}};
}

inline Json algebra_to_json(const LandauGinzburgDBV &alg)
{
    Json potential = Json::object();
    const Polynomial &w = alg.potential();
    for (int k = 0; k <= w.degree(); ++k) {
        if (!is_zero(w.coeff(k))) {
            potential[std::to_string(k)] = to_string(w.coeff(k));
        }
    }
    return {{"kind", "landau-ginzburg"}, {"potential", potential}};
}

inline Json algebra_to_json(const AnyAlgebra &alg)
{
    return std::visit([](const auto &a) { return algebra_to_json(a); }, alg);
}

namespace detail {

inline const Json &require(const Json &j, const char *key)
{
    if (!j.is_object() || !j.contains(key)) {
        throw InputError(std::string("algebra spec is missing '") + key + "'");
    }
    return j.at(key);
}

inline FiniteDimDBV finite_from_json(const Json &j)
{
    std::vector<BasisElement> elements;
    for (const auto &e : require(j, "basis")) {
        elements.push_back({require(e, "name").get<std::string>(), require(e, "degree").get<int>()});
    }
    if (elements.empty()) {
        throw InputError("graded basis is empty (no unit)");
    }
    const std::string unit = require(j, "unit").get<std::string>();
    std::size_t u = elements.size();
    for (std::size_t i = 0; i < elements.size(); ++i) {
        if (elements[i].name == unit) {
            u = i;
        }
    }
    if (u == elements.size()) {
        throw InputError("unit '" + unit + "' is not a basis element");
    }
    GradedBasis basis(std::move(elements), u);
    auto index = [&](const Json &name) {
        auto i = basis.find(name.get<std::string>());
        if (!i) {
            throw InputError("unknown basis element " + name.dump());
        }
        return *i;
    };
    // resolve vector names against the basis alone
    FiniteDimDBV names(basis, {}, {}, {});
    FiniteDimDBV::ProductTable product;
    for (const auto &entry : j.value("product", Json::array())) {
        if (!entry.is_array() || entry.size() != 3) {
            throw InputError("product entries are [a, b, {c: q}], got " + entry.dump());
        }
        product[{index(entry[0]), index(entry[1])}] += vector_from_json(names, entry[2]);
    }
    auto table = [&](const char *key) {
        std::vector<Vector> t(basis.size());
        for (const auto &entry : j.value(key, Json::array())) {
            if (!entry.is_array() || entry.size() != 2) {
                throw InputError(std::string(key) + " entries are [a, {b: q}], got " + entry.dump());
            }
            t[static_cast<std::size_t>(index(entry[0]))] += vector_from_json(names, entry[1]);
        }
        return t;
    };
    return FiniteDimDBV(basis, std::move(product), table("Q"), table("Delta"));
}

inline LandauGinzburgDBV landau_ginzburg_from_json(const Json &j)
{
    std::map<int, Scalar> terms;
    for (const auto &[k, c] : require(j, "potential").items()) {
        int e = 0;
        try {
            std::size_t used = 0;
            e = std::stoi(k, &used);
            if (used != k.size() || e < 0) {
                throw std::invalid_argument(k);
            }
        } catch (const std::exception &) {
            throw InputError("potential exponent '" + k + "' is not a nonnegative integer");
        }
        terms[e] += scalar_from_json(c);
    }
    return LandauGinzburgDBV(Polynomial::from_map(terms));
}

} // namespace detail

/// Throws InputError (or BasisMismatch) on malformed specs.
inline AnyAlgebra algebra_from_json(const Json &j)
{
    const std::string kind = detail::require(j, "kind").get<std::string>();
    try {
        if (kind == "finite") {
            return detail::finite_from_json(j);
        }
        if (kind == "landau-ginzburg") {
            return detail::landau_ginzburg_from_json(j);
        }
    } catch (const InputError &) {
        throw;
    } catch (const Json::exception &e) {
        throw InputError(std::string("malformed algebra spec: ") + e.what());
    } catch (const std::invalid_argument &e) {
        throw InputError(e.what());
    }
    throw InputError("unknown algebra kind '" + kind + "'");
}

inline Json read_json_file(const std::string &path)
{
    std::ifstream in(path);
    if (!in) {
        throw InputError("cannot open '" + path + "'");
    }
    try {
        return Json::parse(in);
    } catch (const Json::parse_error &e) {
        throw InputError("'" + path + "' is not valid JSON: " + e.what());
    }
}

/// 64-bit FNV-1a of the canonical spec serialization.
inline std::string algebra_hash(const AnyAlgebra &alg)
{
    const std::string text = algebra_to_json(alg).dump();
    std::uint64_t h = 1469598103934665603ULL;
    for (unsigned char c : text) {
        h ^= c;
        h *= 1099511628211ULL;
    }
    char buf[17];
    std::snprintf(buf, sizeof buf, "%016llx", static_cast<unsigned long long>(h));
    return buf;
}

template <DBVBackend A>
Json homology_to_json(const A &alg, const HomologyBasis &classes)
{
    Json out = Json::array();
    for (const auto &c : classes) {
        out.push_back({{"name", c.name}, {"degree", c.degree}, {"representative", vector_to_json(alg, c.representative)}});
    }
    return out;
}

template <DBVBackend A>
HomologyBasis homology_from_json(const A &alg, const Json &j)
{
    HomologyBasis out;
    for (const auto &c : j) {
        out.push_back({c.at("name").get<std::string>(), c.at("degree").get<int>(),
                       vector_from_json(alg, c.at("representative"))});
    }
    return out;
}

template <DBVBackend A>
Json solution_to_json(const A &alg, const VersalSolution &sol, const std::string &hash)
{
    return {{"algebra_hash", hash},
            {"flavor", to_string(sol.flavor)},
            {"t_order", sol.t_order},
            {"hbar_order", sol.hbar_order},
            {"representatives", homology_to_json(alg, sol.representatives)},
            {"gamma", series_to_json(alg, sol.gamma)}};
}

struct SolutionFile
{
    std::string algebra_hash;
    VersalSolution solution;
};

template <DBVBackend A>
SolutionFile solution_from_json(const A &alg, const Json &j)
{
    try {
        SolutionFile f;
        f.algebra_hash = j.value("algebra_hash", std::string{});
        auto flavor = parse_flavor(j.at("flavor").get<std::string>());
        if (!flavor) {
            throw InputError("unknown flavor " + j.at("flavor").dump());
        }
        VersalSolution &s = f.solution;
        s.flavor = *flavor;
        s.t_order = j.at("t_order").get<int>();
        s.hbar_order = j.at("hbar_order").get<int>();
        if (s.t_order < 1 || s.hbar_order < 0) {
            throw InputError("solution orders out of range");
        }
        s.representatives = homology_from_json(alg, j.at("representatives"));
        s.gamma = series_from_json(alg, j.at("gamma"), variables_for(s.representatives),
                                   Truncation{s.t_order, s.hbar_order});
        return f;
    } catch (const Json::exception &e) {
        throw InputError(std::string("malformed solution file: ") + e.what());
    }
}

} // namespace dbv

#endif // DBV_IO_HPP
