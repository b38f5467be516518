#ifndef SULLIVAN_MODEL_HPP
#define SULLIVAN_MODEL_HPP

#include <cassert>
#include <map>
#include <memory>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "sullivan/errors.hpp"
#include "sullivan/gca.hpp"
#include "sullivan/linalg.hpp"

namespace sullivan {

/// Free graded-commutative algebra equipped with a degree +1 map on
/// generators, extended as an odd derivation. Nothing is assumed about the
/// assignment here; see validate_sullivan / SullivanModel for the conditions
/// that make it a minimal Sullivan algebra.
class Dga {
public:
    Dga(GenSetPtr set, std::vector<GcaElement> d_images)
        : set_(std::move(set)), d_(std::move(d_images)) {
        d_.resize(set_->count());
        for (GenId g = 0; g < d_.size(); ++g)
            if (!d_[g].is_zero() && !(d_[g].set() == set_ || *d_[g].set() == *set_))
                throw compute_error("differential image of '" + set_->name_of(g) +
                                    "' lives over a different generator set");
    }

    static Dga from_map(GenSetPtr set, const std::map<std::string, GcaElement>& images) {
        std::vector<GcaElement> d(set->count());
        for (const auto& [name, value] : images) {
            auto id = set->find(name);
            if (!id) throw compute_error("differential assigned to unknown generator '" + name + "'");
            d[*id] = value;
        }
        return Dga(std::move(set), std::move(d));
    }

    const GenSetPtr& set() const { return set_; }
    const GeneratorSet& gens() const { return *set_; }
    const GcaElement& d_of(GenId g) const { return d_.at(g); }
    const std::vector<GcaElement>& d_images() const { return d_; }

    GcaElement d(const GcaElement& e) const { return apply_odd_derivation(e, d_); }

    bool operator==(const Dga& o) const { return *set_ == *o.set_ && d_ == o.d_; }

private:
    GenSetPtr set_;
    std::vector<GcaElement> d_;
};

struct ValidationIssue {
    enum class Kind {
        kDegreeTooLow,      // generator degree < 2
        kNotHomogeneous,    // d(v) not homogeneous of degree |v|+1
        kNotDecomposable,   // d(v) has a term of word length < 2
        kDSquareNonzero,    // d(d(v)) != 0
    };
    Kind kind;
    std::string generator;
    std::string detail;
};

struct ValidationReport {
    std::vector<ValidationIssue> issues;
    bool valid() const { return issues.empty(); }

    std::string to_string() const {
        std::string out;
        for (const auto& issue : issues) {
            if (!out.empty()) out += "\n";
            out += "generator '" + issue.generator + "': " + issue.detail;
        }
        return out.empty() ? "ok" : out;
    }
};

/// Check the minimal-Sullivan conditions: simply connected generators
/// (degree >= 2), differential images homogeneous of degree +1 and
/// decomposable (word length >= 2), and d o d = 0 on generators (hence
/// everywhere, by the derivation property).
inline ValidationReport validate_sullivan(const Dga& dga) {
    ValidationReport report;
    const GeneratorSet& s = dga.gens();
    for (GenId g = 0; g < s.count(); ++g) {
        const std::string& name = s.name_of(g);
        if (s.degree_of(g) < 2)
            report.issues.push_back({ValidationIssue::Kind::kDegreeTooLow, name,
                                     "degree " + std::to_string(s.degree_of(g)) +
                                         " < 2 (not simply connected)"});
        const GcaElement& dv = dga.d_of(g);
        if (dv.is_zero()) continue;
        if (!dv.is_homogeneous_of(s.degree_of(g) + 1)) {
            report.issues.push_back({ValidationIssue::Kind::kNotHomogeneous, name,
                                     "d-image is not homogeneous of degree " +
                                         std::to_string(s.degree_of(g) + 1)});
            continue;  // later checks assume a graded image
        }
        if (!dv.word_component(0).is_zero() || !dv.word_component(1).is_zero())
            report.issues.push_back({ValidationIssue::Kind::kNotDecomposable, name,
                                     "d-image has a term of word length < 2 "
                                     "(minimality fails)"});
    }
    if (report.valid()) {
        for (GenId g = 0; g < s.count(); ++g) {
            if (!dga.d(dga.d_of(g)).is_zero())
                report.issues.push_back({ValidationIssue::Kind::kDSquareNonzero,
                                         s.name_of(g), "d(d(" + s.name_of(g) + ")) != 0"});
        }
    }
    return report;
}

class SullivanModel;

/// A (possibly truncated) view Lambda(V^{<=cutoff}) of a differential
/// algebra. Views over the same Dga share its generator set, so the
/// inclusion of a truncation into the full algebra is the identity on
/// elements and no coordinate translation ever happens.
struct Algebra {
    std::shared_ptr<const Dga> dga;
    int cutoff = kNoCutoff;

    const GeneratorSet& gens() const { return dga->gens(); }
    const GenSetPtr& set() const { return dga->set(); }

    std::vector<GenId> gen_ids() const { return gens().ids_up_to(cutoff); }
    std::vector<GenId> ids_in_degree(int degree) const {
        return degree > cutoff ? std::vector<GenId>{} : gens().ids_in_degree(degree);
    }

    /// Largest generator degree present in the view (0 when trivial).
    int top_degree() const {
        int top = 0;
        for (GenId g : gen_ids()) top = std::max(top, gens().degree_of(g));
        return top;
    }

    bool is_trivial() const { return gen_ids().empty(); }

    GradedPieceBasis piece(int degree) const {
        return graded_piece(gens(), degree, cutoff);
    }

    bool contains(const GcaElement& e) const { return e.lies_in(cutoff); }

    GcaElement d(const GcaElement& e) const { return dga->d(e); }

    Algebra truncated(int n) const {
        if (n > cutoff) throw compute_error("truncation cutoff exceeds the view's own cutoff");
        Algebra a{dga, n};
        for (GenId g : a.gen_ids())
            if (!a.contains(dga->d_of(g)))
                throw model_error("truncation at degree " + std::to_string(n) +
                                  " is not closed under d (generator '" +
                                  gens().name_of(g) + "')");
        return a;
    }

    /// Same underlying differential algebra and same cutoff.
    bool same_as(const Algebra& o) const { return dga == o.dga && cutoff == o.cutoff; }

    /// Matrix of d from degree `degree` to degree `degree`+1 in the monomial
    /// bases of this view.
    QMatrix d_matrix(int degree) const {
        const GradedPieceBasis dom = piece(degree);
        const GradedPieceBasis cod = piece(degree + 1);
        QMatrix m(cod.dim(), dom.dim());
        for (std::size_t j = 0; j < dom.dim(); ++j) {
            const GcaElement img =
                d(GcaElement::term(set(), dom.monomials[j], Rational(1)));
            const std::vector<Rational> c = coords(img, cod);
            for (std::size_t i = 0; i < cod.dim(); ++i) m.at(i, j) = c[i];
        }
        return m;
    }
};

/// A validated minimal Sullivan algebra. Construction either checks the
/// conditions (`checked`) or records the caller's promise (`unchecked`,
/// for tests that deliberately feed broken data to the machinery).
class SullivanModel {
public:
    static SullivanModel checked(Dga dga) {
        ValidationReport report = validate_sullivan(dga);
        if (!report.valid()) throw model_error(report.to_string());
        return SullivanModel(std::move(dga));
    }

    static SullivanModel unchecked(Dga dga) { return SullivanModel(std::move(dga)); }

    const Dga& dga() const { return *dga_; }
    const GeneratorSet& gens() const { return dga_->gens(); }
    const GenSetPtr& set() const { return dga_->set(); }

    Algebra algebra() const { return Algebra{dga_, kNoCutoff}; }
    Algebra truncated(int n) const { return algebra().truncated(n); }

    int top_degree() const { return gens().max_degree(); }

private:
    explicit SullivanModel(Dga dga) : dga_(std::make_shared<const Dga>(std::move(dga))) {}

    std::shared_ptr<const Dga> dga_;
};

/// Basis of one cohomology group H^degree of an algebra view, with a solver
/// that expresses any cocycle in that basis.
///
/// Representatives are chosen deterministically: kernel basis vectors of the
/// differential (in the fixed elimination order) are admitted greedily
/// whenever they are independent of the coboundary image plus the
/// representatives already chosen. class_coords solves against the matrix
/// [R | D], R the representative columns and D the incoming differential,
/// so a representative's own coordinates come out as a standard basis
/// vector and the leftover columns give an explicit coboundary witness.
class CohomologyBasis {
public:
    static CohomologyBasis compute(const Algebra& a, int degree) {
        CohomologyBasis h;
        h.alg_ = a;
        h.degree_ = degree;
        h.piece_ = a.piece(degree);
        h.piece_below_ = a.piece(degree - 1);

        const QMatrix d_out = a.d_matrix(degree);
        const QMatrix d_in = a.d_matrix(degree - 1);
        assert(d_in.rows() == h.piece_.dim() && d_out.cols() == h.piece_.dim());

        const std::vector<std::vector<Rational>> kernel = kernel_basis(d_out);
        std::vector<std::vector<Rational>> chosen;
        std::vector<std::vector<Rational>> span;
        for (std::size_t c : pivot_columns(d_in)) span.push_back(d_in.column(c));
        const std::size_t image_rank = span.size();
        for (const auto& k : kernel) {
            span.push_back(k);
            if (rank(QMatrix::from_columns(h.piece_.dim(), span)) == span.size())
                chosen.push_back(k);
            else
                span.pop_back();
        }
        assert(span.size() - image_rank == chosen.size());

        for (const auto& v : chosen)
            h.reps_.push_back(element_of(a.set(), h.piece_, v));

        // [R | D_in]: h.dim() representative columns, then all coboundaries.
        std::vector<std::vector<Rational>> solve_cols = chosen;
        for (std::size_t j = 0; j < d_in.cols(); ++j) solve_cols.push_back(d_in.column(j));
        h.solve_mat_ = QMatrix::from_columns(h.piece_.dim(), solve_cols);
        return h;
    }

    int degree() const { return degree_; }
    std::size_t dim() const { return reps_.size(); }
    const std::vector<GcaElement>& representatives() const { return reps_; }
    const Algebra& algebra() const { return alg_; }

    struct ClassCoords {
        std::vector<Rational> coords;  // in the representative basis
        GcaElement witness;            // z - sum(coords_i * rep_i) = d(witness)
    };

    /// Express a cocycle of this degree as a combination of the chosen
    /// representatives plus an explicit coboundary. Throws compute_error when
    /// the element is not a cocycle of the right degree in this view, and
    /// invariant_error if the linear algebra ever disagrees with itself.
    ClassCoords class_coords(const GcaElement& z) const {
        if (!z.is_zero()) {
            if (!alg_.contains(z))
                throw compute_error("class_coords: element lies outside the algebra view");
            if (!z.is_homogeneous_of(degree_))
                throw compute_error("class_coords: element is not homogeneous of degree " +
                                    std::to_string(degree_));
            if (!alg_.d(z).is_zero())
                throw compute_error("class_coords: element is not a cocycle");
        }
        ClassCoords out;
        out.coords.assign(dim(), Rational(0));
        out.witness = GcaElement::zero(alg_.set());
        if (z.is_zero()) return out;

        const std::optional<std::vector<Rational>> sol =
            solve(solve_mat_, coords(z, piece_));
        if (!sol)
            throw invariant_error("class_coords: cocycle not in span of "
                                  "representatives and coboundaries");
        std::vector<Rational> witness_coords(piece_below_.dim());
        for (std::size_t j = 0; j < dim(); ++j) out.coords[j] = (*sol)[j];
        for (std::size_t j = 0; j < piece_below_.dim(); ++j)
            witness_coords[j] = (*sol)[dim() + j];
        out.witness = element_of(alg_.set(), piece_below_, witness_coords);
        return out;
    }

    /// The element with the given coordinates in the representative basis.
    GcaElement combine(const std::vector<Rational>& c) const {
        if (c.size() != dim())
            throw compute_error("combine: coordinate length mismatch");
        GcaElement e = GcaElement::zero(alg_.set());
        for (std::size_t i = 0; i < dim(); ++i) e += c[i] * reps_[i];
        return e;
    }

private:
    Algebra alg_;
    int degree_ = 0;
    GradedPieceBasis piece_, piece_below_;
    std::vector<GcaElement> reps_;
    QMatrix solve_mat_;
};

/// Betti numbers dim H^0 .. dim H^max_degree of a view.
inline std::vector<std::size_t> betti(const Algebra& a, int max_degree) {
    std::vector<std::size_t> b;
    for (int n = 0; n <= max_degree; ++n)
        b.push_back(CohomologyBasis::compute(a, n).dim());
    return b;
}

/// Coordinates of the word-length-1 part of a homogeneous element over the
/// degree-`degree` generators of the view (the element itself may be zero).
inline std::vector<Rational> linear_coords(const Algebra& a, const GcaElement& e,
                                           int degree) {
    if (!e.is_homogeneous_of(degree))
        throw compute_error("linear_coords: element is not homogeneous of the given degree");
    const std::vector<GenId> gens = a.ids_in_degree(degree);
    std::vector<Rational> out(gens.size());
    const GcaElement lin = e.word_component(1);
    for (std::size_t i = 0; i < gens.size(); ++i)
        out[i] = lin.coefficient(Monomial::of(gens[i]));
    return out;
}

}  // namespace sullivan

#endif
