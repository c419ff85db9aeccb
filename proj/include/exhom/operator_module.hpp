#pragma once

// Finite-dimensional modules over a commuting family of labeled operators,
// analytic zero-block flags, and the two-module variant connected by an
// equivariant map.

#include <optional>
#include <string>
#include <vector>

#include "exhom/linalg.hpp"

namespace exhom {

// Operators with index >= analytic_from are required to be zero matrices.
struct AnalyticFlags {
    int d = 1;              // number of derivation-like operators past the lead one
    int analytic_from = 2;  // first killed index
};

template <field_scalar K>
struct OperatorModule {
    using F = typename K::Field;

    F field;
    Index dim = 0;
    std::vector<Mat<K>> ops;
    std::vector<std::string> labels;
    std::optional<AnalyticFlags> flags;

    OperatorModule(F f, Index dim_, std::vector<Mat<K>> ops_, std::vector<std::string> labels_,
                   std::optional<AnalyticFlags> flags_ = std::nullopt)
        : field(std::move(f)),
          dim(dim_),
          ops(std::move(ops_)),
          labels(std::move(labels_)),
          flags(flags_) {
        validate();
    }

    int op_count() const { return static_cast<int>(ops.size()); }

    void validate() const {
        if (ops.empty()) throw FieldError("operator module: need at least one operator");
        if (labels.size() != ops.size())
            throw FieldError("operator module: labels must match operators");
        for (const auto& x : ops) {
            if (x.rows() != dim || x.cols() != dim)
                throw FieldError("operator module: operator shape mismatch");
            check_field<K>(field, x);
        }
        for (std::size_t i = 0; i < ops.size(); ++i)
            for (std::size_t j = i + 1; j < ops.size(); ++j)
                if (!mat_eq<K>(Mat<K>(ops[i] * ops[j]), Mat<K>(ops[j] * ops[i])))
                    throw FieldError("operator module: operators " + labels[i] + " and " +
                                     labels[j] + " do not commute");
        if (flags) {
            if (flags->analytic_from < 0 || flags->analytic_from > op_count())
                throw FieldError("operator module: analytic_from out of range");
            for (int i = flags->analytic_from; i < op_count(); ++i)
                if (!is_zero_mat<K>(ops[static_cast<std::size_t>(i)]))
                    throw FieldError("operator module: flagged operator " +
                                     labels[static_cast<std::size_t>(i)] + " is not zero");
        }
    }

    OperatorModule with_flags(AnalyticFlags fl) const {
        return OperatorModule(field, dim, ops, labels, fl);
    }
};

// all-zero operators on a w-dimensional space, same labels as a template
template <field_scalar K>
OperatorModule<K> trivial_module(const typename K::Field& F,
                                 const std::vector<std::string>& labels, Index w = 1) {
    std::vector<Mat<K>> ops(labels.size(), zeros<K>(F, w, w));
    return OperatorModule<K>(F, w, std::move(ops), labels);
}

// Two operator modules over one field with matching labels, joined by an
// equivariant map phi; iota is the comparison map subtracted from phi when
// the pair enters a mapping fibre (identity for equal sides by default, zero
// otherwise).
template <field_scalar K>
struct TwoIntervalModule {
    OperatorModule<K> m_I, m_J;
    Mat<K> phi;   // dim(m_J) x dim(m_I)
    Mat<K> iota;  // same shape

    TwoIntervalModule(OperatorModule<K> a, OperatorModule<K> b, Mat<K> phi_,
                      std::optional<Mat<K>> iota_ = std::nullopt)
        : m_I(std::move(a)), m_J(std::move(b)), phi(std::move(phi_)), iota(default_iota(iota_)) {
        validate();
    }

    // phi - iota, the map whose fibre the cohomology theories use
    Mat<K> fibre_map() const { return phi - iota; }

    void validate() const {
        if (!(m_I.field == m_J.field)) throw FieldError("two-interval module: field mismatch");
        if (m_I.labels != m_J.labels)
            throw FieldError("two-interval module: operator labels differ");
        if (phi.rows() != m_J.dim || phi.cols() != m_I.dim)
            throw FieldError("two-interval module: phi shape mismatch");
        if (iota.rows() != m_J.dim || iota.cols() != m_I.dim)
            throw FieldError("two-interval module: iota shape mismatch");
        check_field<K>(m_I.field, phi);
        check_field<K>(m_I.field, iota);
        for (std::size_t i = 0; i < m_I.ops.size(); ++i) {
            if (!mat_eq<K>(Mat<K>(m_J.ops[i] * phi), Mat<K>(phi * m_I.ops[i])))
                throw FieldError("two-interval module: phi does not intertwine " + m_I.labels[i]);
            if (!mat_eq<K>(Mat<K>(m_J.ops[i] * iota), Mat<K>(iota * m_I.ops[i])))
                throw FieldError("two-interval module: iota does not intertwine " +
                                 m_I.labels[i]);
        }
    }

  private:
    Mat<K> default_iota(const std::optional<Mat<K>>& given) const {
        if (given) return *given;
        if (m_I.dim == m_J.dim) {
            bool same_ops = true;
            for (std::size_t i = 0; i < m_I.ops.size(); ++i)
                if (!mat_eq<K>(m_I.ops[i], m_J.ops[i])) same_ops = false;
            if (same_ops) return eye<K>(m_I.field, m_I.dim);
        }
        return zeros<K>(m_I.field, m_J.dim, m_I.dim);
    }
};

}  // namespace exhom
