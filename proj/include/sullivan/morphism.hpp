#ifndef SULLIVAN_MORPHISM_HPP
#define SULLIVAN_MORPHISM_HPP

#include <map>
#include <string>
#include <utility>
#include <vector>

#include "sullivan/errors.hpp"
#include "sullivan/gca.hpp"
#include "sullivan/linalg.hpp"
#include "sullivan/model.hpp"
#include "sullivan/print.hpp"

namespace sullivan {

/// Morphism of differential graded algebras between two (possibly
/// truncated) views, given by generator images and extended
/// multiplicatively. Construction verifies that images are homogeneous of
/// the right degree, land in the target view, and satisfy the chain
/// condition phi(d v) = d(phi v) on every source generator.
class DgaMorphism {
public:
    /// `images` is indexed by source generator id; ids above the source
    /// cutoff are ignored. Throws compute_error on any violated condition.
    static DgaMorphism make(Algebra src, Algebra dst, std::vector<GcaElement> images) {
        images.resize(src.gens().count());
        DgaMorphism f(std::move(src), std::move(dst), std::move(images));
        for (GenId g : f.src_.gen_ids()) {
            const std::string& name = f.src_.gens().name_of(g);
            const GcaElement& img = f.images_[g];
            if (!img.is_homogeneous_of(f.src_.gens().degree_of(g)))
                throw compute_error("morphism image of '" + name +
                                    "' is not homogeneous of degree " +
                                    std::to_string(f.src_.gens().degree_of(g)));
            if (!f.dst_.contains(img))
                throw compute_error("morphism image of '" + name +
                                    "' lies outside the target view");
        }
        for (GenId g : f.src_.gen_ids()) {
            const GcaElement lhs = f.apply(f.src_.dga->d_of(g));
            const GcaElement rhs = f.dst_.d(f.images_[g]);
            if (lhs != rhs)
                throw compute_error("chain condition fails on generator '" +
                                    f.src_.gens().name_of(g) + "': phi(d v) = " +
                                    to_string(lhs) + " but d(phi v) = " + to_string(rhs));
        }
        return f;
    }

    static DgaMorphism make(const Algebra& src, const Algebra& dst,
                            const std::map<std::string, GcaElement>& by_name) {
        std::vector<GcaElement> images(src.gens().count());
        for (const auto& [name, value] : by_name) {
            auto id = src.gens().find(name);
            if (!id) throw compute_error("morphism assigns unknown generator '" + name + "'");
            images[*id] = value;
        }
        return make(src, dst, std::move(images));
    }

    static DgaMorphism identity(const Algebra& a) {
        std::vector<GcaElement> images(a.gens().count());
        for (GenId g : a.gen_ids()) images[g] = GcaElement::generator(a.set(), g);
        return DgaMorphism(a, a, std::move(images));
    }

    const Algebra& src() const { return src_; }
    const Algebra& dst() const { return dst_; }
    bool is_self_map() const { return src_.same_as(dst_); }

    const GcaElement& image_of(GenId g) const { return images_.at(g); }

    GcaElement apply(const GcaElement& e) const {
        if (!src_.contains(e))
            throw compute_error("morphism applied to an element outside its source view");
        return apply_algebra_map(e, images_, dst_.set());
    }

    /// Matrix of the induced linear map V^degree -> W^degree (coefficients
    /// of generator images on target generators), rows indexed by target
    /// generators, columns by source generators of that degree.
    QMatrix linear_part(int degree) const {
        const std::vector<GenId> dom = src_.ids_in_degree(degree);
        std::vector<std::vector<Rational>> cols;
        std::size_t rows = dst_.ids_in_degree(degree).size();
        for (GenId g : dom) cols.push_back(linear_coords(dst_, images_[g], degree));
        return QMatrix::from_columns(rows, cols);
    }

    /// A self-map of a minimal algebra view is an equivalence iff every
    /// linear part is invertible.
    bool is_equivalence() const {
        if (!is_self_map()) return false;
        for (int d = 2; d <= src_.top_degree(); ++d) {
            const QMatrix m = linear_part(d);
            if (m.rows() != m.cols() || (m.rows() > 0 && !sullivan::inverse(m)))
                return false;
        }
        return true;
    }

    /// True when every linear part is the identity matrix.
    bool linear_part_is_identity() const {
        if (!is_self_map()) return false;
        for (int d = 2; d <= src_.top_degree(); ++d)
            if (!linear_part(d).is_identity()) return false;
        return true;
    }

    /// Restriction to the sub-view Lambda(V^{<=n}) on both sides. Defined
    /// for self-maps; image degrees <= n keep the images inside the smaller
    /// view automatically.
    DgaMorphism restrict(int n) const {
        if (!is_self_map())
            throw compute_error("restrict: only self-maps can be truncated");
        Algebra small = src_.truncated(n);
        std::vector<GcaElement> images(images_.size());
        for (GenId g : small.gen_ids()) {
            if (!images_[g].lies_in(n))
                throw compute_error("restrict: image of '" + src_.gens().name_of(g) +
                                    "' does not lie in the truncation");
            images[g] = images_[g];
        }
        return DgaMorphism(small, small, std::move(images));
    }

    friend DgaMorphism compose(const DgaMorphism& g, const DgaMorphism& f) {
        if (!f.dst_.same_as(g.src_))
            throw compute_error("compose: middle views disagree");
        std::vector<GcaElement> images(f.images_.size());
        for (GenId v : f.src_.gen_ids()) images[v] = g.apply(f.images_[v]);
        return DgaMorphism(f.src_, g.dst_, std::move(images));
    }

    /// Exact inverse of a self-equivalence of a minimal view: each generator
    /// image is found by solving the (invertible) matrix of this morphism on
    /// the generator's graded piece.
    DgaMorphism inverse() const {
        if (!is_self_map() || !is_equivalence())
            throw compute_error("inverse: morphism is not a self-equivalence");
        std::vector<GcaElement> images(images_.size());
        std::map<int, GradedPieceBasis> pieces;
        std::map<int, QMatrix> mats;
        for (GenId g : src_.gen_ids()) {
            const int d = src_.gens().degree_of(g);
            if (!pieces.count(d)) {
                const GradedPieceBasis piece = src_.piece(d);
                QMatrix m(piece.dim(), piece.dim());
                for (std::size_t j = 0; j < piece.dim(); ++j) {
                    const std::vector<Rational> c = coords(
                        apply(GcaElement::term(src_.set(), piece.monomials[j], Rational(1))),
                        piece);
                    for (std::size_t i = 0; i < piece.dim(); ++i) m.at(i, j) = c[i];
                }
                pieces.emplace(d, piece);
                mats.emplace(d, std::move(m));
            }
            const GradedPieceBasis& piece = pieces.at(d);
            std::vector<Rational> target(piece.dim());
            target[*piece.index_of(Monomial::of(g))] = 1;
            const auto sol = solve(mats.at(d), target);
            if (!sol)
                throw invariant_error("inverse: graded piece matrix of an "
                                      "equivalence is singular");
            images[g] = element_of(src_.set(), piece, *sol);
        }
        DgaMorphism inv(src_, dst_, std::move(images));
        return inv;
    }

    bool operator==(const DgaMorphism& o) const {
        if (!src_.same_as(o.src_) || !dst_.same_as(o.dst_)) return false;
        for (GenId g : src_.gen_ids())
            if (images_[g] != o.images_[g]) return false;
        return true;
    }
    bool operator!=(const DgaMorphism& o) const { return !(*this == o); }

private:
    DgaMorphism(Algebra src, Algebra dst, std::vector<GcaElement> images)
        : src_(std::move(src)), dst_(std::move(dst)), images_(std::move(images)) {
        images_.resize(src_.gens().count());
    }

    Algebra src_, dst_;
    std::vector<GcaElement> images_;  // indexed by source generator id
};

}  // namespace sullivan

#endif
