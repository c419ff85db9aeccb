#pragma once

// JSON schemas for fields, matrices, operator modules and the two-module
// variant.  Scalars travel as exact strings ("a/b" rationals, "c" prime
// fields, "c0+c1*t+..." extensions); ordered_json keeps emission
// byte-deterministic.

#include <cstdio>

#include <json.hpp>

#include "exhom/operator_module.hpp"

namespace exhom {

using ojson = nlohmann::ordered_json;

inline ojson field_to_json(const FieldSpec& fs) {
    ojson j;
    switch (fs.kind) {
        case FieldSpec::Kind::rationals:
            j["kind"] = "rationals";
            break;
        case FieldSpec::Kind::prime:
            j["kind"] = "gf";
            j["p"] = fs.p;
            break;
        case FieldSpec::Kind::extension:
            j["kind"] = "gf";
            j["p"] = fs.p;
            j["n"] = fs.n;
            j["min_poly"] = fs.min_poly;
            break;
    }
    return j;
}

inline FieldSpec field_from_json(const ojson& j) {
    const std::string kind = j.at("kind").get<std::string>();
    if (kind == "rationals") return FieldSpec::rationals();
    if (kind == "gf") {
        const auto p = j.at("p").get<std::uint32_t>();
        if (!j.contains("n")) return FieldSpec::gf(p);
        const auto n = j.at("n").get<std::uint32_t>();
        if (j.contains("min_poly"))
            return FieldSpec::gf(p, n, j.at("min_poly").get<std::vector<std::uint32_t>>());
        return FieldSpec::gf(p, n);
    }
    throw FieldError("unknown field kind in JSON: " + kind);
}

// row-major exact strings
template <class F>
ojson mat_to_json(const F& field, const Mat<typename F::Scalar>& m) {
    ojson rows = ojson::array();
    for (Index i = 0; i < m.rows(); ++i) {
        ojson row = ojson::array();
        for (Index j = 0; j < m.cols(); ++j) row.push_back(field.str(m(i, j)));
        rows.push_back(std::move(row));
    }
    return rows;
}

template <class F>
Mat<typename F::Scalar> mat_from_json(const F& field, const ojson& j, Index rows, Index cols) {
    using K = typename F::Scalar;
    if (static_cast<Index>(j.size()) != rows) throw FieldError("matrix JSON: row count mismatch");
    Mat<K> m = zeros<K>(field, rows, cols);
    for (Index i = 0; i < rows; ++i) {
        const auto& row = j.at(static_cast<std::size_t>(i));
        if (static_cast<Index>(row.size()) != cols)
            throw FieldError("matrix JSON: column count mismatch");
        for (Index c = 0; c < cols; ++c)
            m(i, c) = field.parse(row.at(static_cast<std::size_t>(c)).get<std::string>());
    }
    return m;
}

template <class F>
ojson operator_module_to_json(const F& field, const OperatorModule<typename F::Scalar>& m) {
    ojson j;
    j["field"] = field_to_json(field.spec());
    j["dim"] = m.dim;
    j["labels"] = m.labels;
    ojson ops = ojson::array();
    for (const auto& x : m.ops) ops.push_back(mat_to_json(field, x));
    j["operators"] = std::move(ops);
    if (m.flags) j["analytic_from"] = m.flags->analytic_from;
    return j;
}

template <class F>
OperatorModule<typename F::Scalar> operator_module_from_json(const F& field, const ojson& j) {
    using K = typename F::Scalar;
    const Index dim = j.at("dim").get<Index>();
    const auto labels = j.at("labels").get<std::vector<std::string>>();
    std::vector<Mat<K>> ops;
    for (const auto& oj : j.at("operators")) ops.push_back(mat_from_json(field, oj, dim, dim));
    std::optional<AnalyticFlags> flags;
    if (j.contains("analytic_from"))
        flags = AnalyticFlags{static_cast<int>(ops.size()) - 1, j.at("analytic_from").get<int>()};
    return OperatorModule<K>(field, dim, std::move(ops), labels, flags);
}

template <class F>
ojson two_interval_to_json(const F& field, const TwoIntervalModule<typename F::Scalar>& t) {
    ojson j;
    j["field"] = field_to_json(field.spec());
    j["m_I"] = operator_module_to_json(field, t.m_I);
    j["m_J"] = operator_module_to_json(field, t.m_J);
    j["phi"] = mat_to_json(field, t.phi);
    j["iota"] = mat_to_json(field, t.iota);
    return j;
}

template <class F>
TwoIntervalModule<typename F::Scalar> two_interval_from_json(const F& field, const ojson& j) {
    auto mi = operator_module_from_json(field, j.at("m_I"));
    auto mj = operator_module_from_json(field, j.at("m_J"));
    auto phi = mat_from_json(field, j.at("phi"), mj.dim, mi.dim);
    std::optional<Mat<typename F::Scalar>> iota;
    if (j.contains("iota")) iota = mat_from_json(field, j.at("iota"), mj.dim, mi.dim);
    return TwoIntervalModule<typename F::Scalar>(std::move(mi), std::move(mj), std::move(phi),
                                                 std::move(iota));
}

inline std::string fnv1a_hex(const std::string& bytes) {
    std::uint64_t h = 1469598103934665603ull;
    for (unsigned char c : bytes) {
        h ^= c;
        h *= 1099511628211ull;
    }
    char buf[17];
    std::snprintf(buf, sizeof buf, "%016llx", static_cast<unsigned long long>(h));
    return std::string(buf);
}

}  // namespace exhom
