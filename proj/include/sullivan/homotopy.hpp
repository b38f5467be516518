#ifndef SULLIVAN_HOMOTOPY_HPP
#define SULLIVAN_HOMOTOPY_HPP

#include <cassert>
#include <map>
#include <memory>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "sullivan/errors.hpp"
#include "sullivan/gca.hpp"
#include "sullivan/model.hpp"
#include "sullivan/morphism.hpp"
#include "sullivan/print.hpp"

namespace sullivan {

/// Cylinder object over an algebra view Lambda(V^{<=c}): the free algebra on
/// three copies of the generators -- v itself, v.hat (same degree), and
/// v.bar (degree-1 suspension) -- with differential D(v) = d(v),
/// D(v.hat) = 0, D(v.bar) = v.hat, together with the degree -1 derivation
/// S(v) = v.bar, S(v.bar) = S(v.hat) = 0.
///
/// exp_theta is the exponential of theta = S o D + D o S; it is the
/// standard second endpoint inclusion, and its DGA-map property is verified
/// on construction of exp_theta_morphism.
class Cylinder {
public:
    explicit Cylinder(const Algebra& base) : base_(base) {
        const GeneratorSet& bs = base.gens();
        std::vector<Generator> gens;
        for (GenId g : base.gen_ids()) {
            const Generator& v = bs[g];
            if (v.degree < 2)
                throw compute_error("cylinder base generator '" + v.name +
                                    "' must have degree >= 2");
            gens.push_back(v);
            gens.push_back({v.name + ".bar", v.degree - 1});
            gens.push_back({v.name + ".hat", v.degree});
        }
        GenSetPtr set = make_generator_set(std::move(gens));

        const std::vector<GenId> base_ids = base.gen_ids();
        copy_.assign(bs.count(), 0);
        bar_.assign(bs.count(), 0);
        hat_.assign(bs.count(), 0);
        base_of_copy_.assign(set->count(), bs.count());
        for (GenId g : base_ids) {
            copy_[g] = *set->find(bs.name_of(g));
            bar_[g] = *set->find(bs.name_of(g) + ".bar");
            hat_[g] = *set->find(bs.name_of(g) + ".hat");
            base_of_copy_[copy_[g]] = g;
        }

        std::vector<GcaElement> d_images(set->count());
        std::vector<GcaElement> s_images(set->count());
        embed_images_.assign(bs.count(), GcaElement());
        for (GenId g : base_ids)
            embed_images_[g] = GcaElement::generator(set, copy_[g]);
        for (GenId g : base_ids) {
            d_images[copy_[g]] =
                apply_algebra_map(base.dga->d_of(g), embed_images_, set);
            d_images[bar_[g]] = GcaElement::generator(set, hat_[g]);
            // d_images[hat_[g]] stays zero
            s_images[copy_[g]] = GcaElement::generator(set, bar_[g]);
        }
        dga_ = std::make_shared<const Dga>(set, std::move(d_images));
        s_images_ = std::move(s_images);
    }

    const Algebra& base() const { return base_; }
    Algebra total() const { return Algebra{dga_, kNoCutoff}; }
    const GenSetPtr& set() const { return dga_->set(); }

    GenId copy_id(GenId base_g) const { return copy_.at(base_g); }
    GenId bar_id(GenId base_g) const { return bar_.at(base_g); }
    GenId hat_id(GenId base_g) const { return hat_.at(base_g); }

    GcaElement copy_gen(GenId g) const { return GcaElement::generator(set(), copy_.at(g)); }
    GcaElement bar_gen(GenId g) const { return GcaElement::generator(set(), bar_.at(g)); }
    GcaElement hat_gen(GenId g) const { return GcaElement::generator(set(), hat_.at(g)); }

    /// The inclusion of the base as the first copy.
    GcaElement embed(const GcaElement& e) const {
        if (!base_.contains(e))
            throw compute_error("embed: element lies outside the cylinder base");
        return apply_algebra_map(e, embed_images_, set());
    }

    GcaElement D(const GcaElement& e) const { return dga_->d(e); }
    GcaElement S(const GcaElement& e) const { return apply_odd_derivation(e, s_images_); }

    /// The orbit u_1, u_2 = S(D(u_1)), u_3 = S(D(u_2)), ... until it
    /// vanishes. Each step adds one bar factor to every term while the
    /// degree is fixed, so the orbit length is bounded by the degree; the
    /// guard turns a violation of that bound into a hard error.
    std::vector<GcaElement> sd_orbit(GcaElement u) const {
        std::vector<GcaElement> out;
        int guard = 2;
        for (const auto& [m, c] : u.terms())
            guard = std::max(guard, m.degree(*set()) + 2);
        while (!u.is_zero()) {
            out.push_back(u);
            if (static_cast<int>(out.size()) > guard)
                throw invariant_error("sd_orbit: series failed to terminate");
            u = S(D(u));
        }
        return out;
    }

    /// exp_theta(v) = v + v.hat + sum_{k>=1} (1/k!) (S o D)^k (v).
    GcaElement exp_theta(GenId base_g) const {
        GcaElement out = copy_gen(base_g) + hat_gen(base_g);
        const std::vector<GcaElement> orbit = sd_orbit(S(D(copy_gen(base_g))));
        for (std::size_t k = 0; k < orbit.size(); ++k)
            out += inverse_factorial(static_cast<unsigned>(k + 1)) * orbit[k];
        return out;
    }

    /// exp_theta as a morphism base -> cylinder; construction re-verifies
    /// the chain condition D(exp_theta v) = exp_theta(d v).
    DgaMorphism exp_theta_morphism() const {
        std::vector<GcaElement> images(base_.gens().count());
        for (GenId g : base_.gen_ids()) images[g] = exp_theta(g);
        return DgaMorphism::make(base_, total(), std::move(images));
    }

private:
    Algebra base_;
    std::shared_ptr<const Dga> dga_;
    std::vector<GenId> copy_, bar_, hat_;     // base id -> cylinder id
    std::vector<std::size_t> base_of_copy_;   // cylinder id -> base id (or count())
    std::vector<GcaElement> embed_images_;    // base id -> cylinder element
    std::vector<GcaElement> s_images_;        // cylinder id -> cylinder element
};

/// Algebra map out of a cylinder, recorded by its values on the three
/// families of generators (indexed by base generator id). Construction
/// checks degrees and containment in the target view; whether the map is a
/// chain map with prescribed endpoints is the job of verify_homotopy.
class Homotopy {
public:
    Homotopy(std::shared_ptr<const Cylinder> cyl, Algebra target,
             std::vector<GcaElement> on_copy, std::vector<GcaElement> on_bar,
             std::vector<GcaElement> on_hat)
        : cyl_(std::move(cyl)),
          target_(std::move(target)),
          on_copy_(std::move(on_copy)),
          on_bar_(std::move(on_bar)),
          on_hat_(std::move(on_hat)) {
        const Algebra& base = cyl_->base();
        const std::size_t n = base.gens().count();
        on_copy_.resize(n);
        on_bar_.resize(n);
        on_hat_.resize(n);
        images_.assign(cyl_->set()->count(), GcaElement());
        for (GenId g : base.gen_ids()) {
            const int d = base.gens().degree_of(g);
            const std::string& name = base.gens().name_of(g);
            if (!on_copy_[g].is_homogeneous_of(d) || !on_hat_[g].is_homogeneous_of(d) ||
                !on_bar_[g].is_homogeneous_of(d - 1))
                throw compute_error("homotopy value on '" + name +
                                    "' has the wrong degree");
            if (!target_.contains(on_copy_[g]) || !target_.contains(on_bar_[g]) ||
                !target_.contains(on_hat_[g]))
                throw compute_error("homotopy value on '" + name +
                                    "' lies outside the target view");
            images_[cyl_->copy_id(g)] = on_copy_[g];
            images_[cyl_->bar_id(g)] = on_bar_[g];
            images_[cyl_->hat_id(g)] = on_hat_[g];
        }
    }

    /// The homotopy with both endpoints beta: copies go to beta's images,
    /// bars and hats to zero.
    static Homotopy trivial(const DgaMorphism& beta) {
        auto cyl = std::make_shared<const Cylinder>(beta.src());
        std::vector<GcaElement> on_copy(beta.src().gens().count());
        std::vector<GcaElement> zeros(beta.src().gens().count());
        for (GenId g : beta.src().gen_ids()) on_copy[g] = beta.image_of(g);
        return Homotopy(std::move(cyl), beta.dst(), std::move(on_copy), zeros, zeros);
    }

    const Cylinder& cylinder() const { return *cyl_; }
    std::shared_ptr<const Cylinder> cylinder_ptr() const { return cyl_; }
    const Algebra& base() const { return cyl_->base(); }
    const Algebra& target() const { return target_; }

    const GcaElement& on_copy(GenId g) const { return on_copy_.at(g); }
    const GcaElement& on_bar(GenId g) const { return on_bar_.at(g); }
    const GcaElement& on_hat(GenId g) const { return on_hat_.at(g); }

    GcaElement apply(const GcaElement& cylinder_elem) const {
        return apply_algebra_map(cylinder_elem, images_, target_.set());
    }

private:
    std::shared_ptr<const Cylinder> cyl_;
    Algebra target_;
    std::vector<GcaElement> on_copy_, on_bar_, on_hat_;  // base id -> value
    std::vector<GcaElement> images_;                     // cylinder id -> value
};

struct HomotopyCheck {
    bool ok = true;
    std::string failure;  // description of the first violated condition
};

/// Decide whether F is a DGA homotopy from `from` to `to`: F must be a
/// chain map on every cylinder generator, restrict to `from` along the
/// first copy, and to `to` along exp_theta.
inline HomotopyCheck verify_homotopy(const Homotopy& f, const DgaMorphism& from,
                                     const DgaMorphism& to) {
    if (!from.src().same_as(f.base()) || !to.src().same_as(f.base()) ||
        !from.dst().same_as(f.target()) || !to.dst().same_as(f.target()))
        throw compute_error("verify_homotopy: morphism views do not match the homotopy");
    const Cylinder& cyl = f.cylinder();
    const Algebra& base = f.base();
    auto fail = [&](const std::string& what) {
        return HomotopyCheck{false, what};
    };
    for (GenId g : base.gen_ids()) {
        const std::string& name = base.gens().name_of(g);
        const GcaElement gens[3] = {cyl.copy_gen(g), cyl.bar_gen(g), cyl.hat_gen(g)};
        const char* labels[3] = {"", ".bar", ".hat"};
        for (int k = 0; k < 3; ++k)
            if (f.apply(cyl.D(gens[k])) != f.target().d(f.apply(gens[k])))
                return fail("chain condition fails on '" + name + labels[k] + "'");
        if (f.on_copy(g) != from.image_of(g))
            return fail("first endpoint differs from the given map on '" + name + "'");
        if (f.apply(cyl.exp_theta(g)) != to.image_of(g))
            return fail("second endpoint differs from the given map on '" + name + "'");
    }
    return {};
}

/// Outcome of the coboundary-homotopy construction: either an explicit
/// homotopy, or the reason none exists with this shape.
struct CoboundaryHomotopy {
    std::optional<Homotopy> homotopy;
    std::string obstruction;  // why the construction failed, when it did
    bool homotopic() const { return homotopy.has_value(); }
};

/// For two self-maps that are the identity except for top-degree
/// perturbations alpha(v) = v + z_v, alpha'(v) = v + z'_v with values in the
/// lower truncation: alpha and alpha' are homotopic iff each z_v - z'_v is a
/// coboundary there, and in that case an explicit homotopy is
///   F(v) = v + z_v,   F(v.hat) = z'_v - z_v,   F(v.bar) = -u_v
/// where d(u_v) = z_v - z'_v. The differences are cocycles automatically
/// (both maps satisfy the chain condition), so the only obstruction is a
/// nonzero class.
inline CoboundaryHomotopy coboundary_homotopy(const DgaMorphism& alpha,
                                              const DgaMorphism& alpha_prime) {
    if (!alpha.is_self_map() || !alpha_prime.is_self_map() ||
        !alpha.src().same_as(alpha_prime.src()))
        throw compute_error("coboundary_homotopy: expected two self-maps of one view");
    const Algebra a = alpha.src();
    const int q = a.top_degree();
    if (q == 0) throw compute_error("coboundary_homotopy: the view is trivial");
    for (GenId g : a.gen_ids()) {
        const GcaElement gen = GcaElement::generator(a.set(), g);
        if (a.gens().degree_of(g) < q) {
            if (alpha.image_of(g) != gen || alpha_prime.image_of(g) != gen)
                throw compute_error("coboundary_homotopy: maps must be the identity "
                                    "below the top degree");
        } else {
            if (!(alpha.image_of(g) - gen).lies_in(q - 1) ||
                !(alpha_prime.image_of(g) - gen).lies_in(q - 1))
                throw compute_error("coboundary_homotopy: top-degree perturbations "
                                    "must lie in the lower truncation");
        }
    }

    const Algebra below = a.truncated(q - 1);
    const CohomologyBasis h = CohomologyBasis::compute(below, q);
    auto cyl = std::make_shared<const Cylinder>(a);
    std::vector<GcaElement> on_copy(a.gens().count());
    std::vector<GcaElement> on_bar(a.gens().count());
    std::vector<GcaElement> on_hat(a.gens().count());
    for (GenId g : a.gen_ids()) {
        on_copy[g] = alpha.image_of(g);
        if (a.gens().degree_of(g) < q) continue;
        const GcaElement gen = GcaElement::generator(a.set(), g);
        const GcaElement z = alpha.image_of(g) - gen;
        const GcaElement z_prime = alpha_prime.image_of(g) - gen;
        const CohomologyBasis::ClassCoords cc = h.class_coords(z - z_prime);
        for (const Rational& c : cc.coords)
            if (c != 0) {
                CoboundaryHomotopy out;
                out.obstruction = "perturbation difference at generator '" +
                                  a.gens().name_of(g) +
                                  "' represents a nonzero cohomology class " +
                                  to_string(h.combine(cc.coords));
                return out;
            }
        on_hat[g] = z_prime - z;
        on_bar[g] = -cc.witness;
    }
    CoboundaryHomotopy out;
    out.homotopy = Homotopy(cyl, a, std::move(on_copy), std::move(on_bar),
                            std::move(on_hat));
    const HomotopyCheck check = verify_homotopy(*out.homotopy, alpha, alpha_prime);
    if (!check.ok)
        throw invariant_error("coboundary_homotopy: constructed homotopy fails "
                              "verification: " + check.failure);
    return out;
}

/// Result of trading a homotopy below the top degree for an equality there.
struct NormalizedTop {
    DgaMorphism alpha_prime;               // agrees with beta below degree n
    std::map<GenId, GcaElement> y_prime;   // cocycle corrections on V^n
    Homotopy homotopy;                     // alpha_prime ~ alpha on the whole view
};

/// Given self-maps alpha, beta of Lambda(V^{<=n}) and a homotopy f_below
/// from beta to alpha on Lambda(V^{<=n-1}), build alpha' with
///   alpha'(w) = beta(w) for |w| < n,
///   alpha'(v) = beta(v) + y'_v for |v| = n,
/// homotopic to alpha via an extension of f_below that kills v.bar and
/// v.hat. The correction is
///   y'_v = (alpha(v) - beta(v)) - sum_{k>=1} (1/k!) f_below((S o D)^k v),
/// and is automatically a cocycle, which the construction re-checks.
/// Precondition: alpha(v) - beta(v) lies in the lower truncation for every
/// top-degree generator (its linear part vanishes).
inline NormalizedTop normalize_top(const DgaMorphism& alpha, const DgaMorphism& beta,
                                   int n, const Homotopy& f_below) {
    if (!alpha.is_self_map() || !beta.is_self_map() ||
        !alpha.src().same_as(beta.src()))
        throw compute_error("normalize_top: expected two self-maps of one view");
    const Algebra a = alpha.src();
    if (a.top_degree() > n)
        throw compute_error("normalize_top: the view has generators above degree " +
                            std::to_string(n));
    const Algebra below = a.truncated(n - 1);
    if (!f_below.base().same_as(below) || !f_below.target().same_as(below))
        throw compute_error("normalize_top: homotopy is not over the truncation at " +
                            std::to_string(n - 1));
    {
        const HomotopyCheck check =
            verify_homotopy(f_below, beta.restrict(n - 1), alpha.restrict(n - 1));
        if (!check.ok)
            throw compute_error("normalize_top: f_below is not a homotopy from beta "
                                "to alpha below the top degree: " + check.failure);
    }

    const Cylinder& small = f_below.cylinder();
    std::vector<GcaElement> images(a.gens().count());
    std::map<GenId, GcaElement> y_prime;
    for (GenId g : a.gen_ids()) {
        if (a.gens().degree_of(g) < n) {
            images[g] = beta.image_of(g);
            continue;
        }
        const GcaElement y = alpha.image_of(g) - beta.image_of(g);
        if (!y.lies_in(n - 1))
            throw compute_error("normalize_top: alpha and beta differ in their "
                                "linear part on '" + a.gens().name_of(g) + "'");
        GcaElement correction;
        const std::vector<GcaElement> orbit =
            small.sd_orbit(small.S(small.embed(a.dga->d_of(g))));
        for (std::size_t k = 0; k < orbit.size(); ++k)
            correction += inverse_factorial(static_cast<unsigned>(k + 1)) *
                          f_below.apply(orbit[k]);
        GcaElement yp = y - correction;
        if (!a.d(yp).is_zero())
            throw invariant_error("normalize_top: correction on '" +
                                  a.gens().name_of(g) + "' is not a cocycle");
        images[g] = beta.image_of(g) + yp;
        y_prime.emplace(g, std::move(yp));
    }
    DgaMorphism alpha_prime = DgaMorphism::make(a, a, std::move(images));

    auto big = std::make_shared<const Cylinder>(a);
    std::vector<GcaElement> on_copy(a.gens().count());
    std::vector<GcaElement> on_bar(a.gens().count());
    std::vector<GcaElement> on_hat(a.gens().count());
    for (GenId g : a.gen_ids()) {
        if (a.gens().degree_of(g) < n) {
            on_copy[g] = f_below.on_copy(g);
            on_bar[g] = f_below.on_bar(g);
            on_hat[g] = f_below.on_hat(g);
        } else {
            on_copy[g] = alpha_prime.image_of(g);
        }
    }
    Homotopy big_homotopy(big, a, std::move(on_copy), std::move(on_bar),
                          std::move(on_hat));
    const HomotopyCheck check = verify_homotopy(big_homotopy, alpha_prime, alpha);
    if (!check.ok)
        throw invariant_error("normalize_top: extended homotopy fails verification: " +
                              check.failure);
    return NormalizedTop{std::move(alpha_prime), std::move(y_prime),
                         std::move(big_homotopy)};
}

/// Restrict a homotopy over Lambda(V^{<=c}) to the sub-cylinder over
/// Lambda(V^{<=m}); the recorded values already lie in the smaller view by
/// degree reasons.
inline Homotopy restrict_homotopy(const Homotopy& f, int m) {
    const Algebra small_base = f.base().truncated(m);
    const Algebra small_target = f.target().truncated(m);
    auto cyl = std::make_shared<const Cylinder>(small_base);
    std::vector<GcaElement> on_copy(small_base.gens().count());
    std::vector<GcaElement> on_bar(small_base.gens().count());
    std::vector<GcaElement> on_hat(small_base.gens().count());
    for (GenId g : small_base.gen_ids()) {
        on_copy[g] = f.on_copy(g);
        on_bar[g] = f.on_bar(g);
        on_hat[g] = f.on_hat(g);
    }
    return Homotopy(std::move(cyl), small_target, std::move(on_copy),
                    std::move(on_bar), std::move(on_hat));
}

}  // namespace sullivan

#endif
