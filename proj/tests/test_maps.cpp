#include <gtest/gtest.h>

#include <sullivan/sullivan.hpp>

#include "helpers.hpp"

#include <memory>

using namespace sullivan;
using fixtures::load;

namespace {

/// Self-map of a view given by name -> image, identity elsewhere.
DgaMorphism self_map(const Algebra& a,
                     const std::vector<std::pair<std::string, GcaElement>>& images) {
    std::vector<GcaElement> v(a.gens().count());
    for (GenId g : a.gen_ids()) v[g] = GcaElement::generator(a.set(), g);
    for (const auto& [name, e] : images) v[*a.gens().find(name)] = e;
    return DgaMorphism::make(a, a, std::move(v));
}

}  // namespace

TEST(Morphisms, ChainConditionIsEnforced) {
    const SullivanModel m = load("s2");
    const Algebra a = m.algebra();
    const GcaElement x = GcaElement::generator(a.set(), *a.gens().find("x"));
    const GcaElement y = GcaElement::generator(a.set(), *a.gens().find("y"));
    // y -> 2y is not a chain map unless x -> scaled to match: d(2y) = 2x^2
    // but the image of d y = x^2 stays x^2.
    EXPECT_THROW(self_map(a, {{"y", 2 * y}}), compute_error);
    // Scaling consistently works: x -> 2x, y -> 4y.
    const DgaMorphism f = self_map(a, {{"x", 2 * x}, {"y", 4 * y}});
    EXPECT_TRUE(f.is_equivalence());
    EXPECT_TRUE(f.apply(x * x * y) == 16 * (x * x * y));
}

TEST(Morphisms, ComposeRestrictAndLinearPart) {
    const SullivanModel m = load("s2s4");
    const Algebra a = m.algebra();
    const GcaElement x = GcaElement::generator(a.set(), *a.gens().find("x"));
    const GcaElement y = GcaElement::generator(a.set(), *a.gens().find("y"));
    const GcaElement aa = GcaElement::generator(a.set(), *a.gens().find("a"));
    const GcaElement b = GcaElement::generator(a.set(), *a.gens().find("b"));
    // d(b + 2*y*a + x^2*y) = a^2 + 2*x^2*a + x^4 = f(d b), so f is a chain map.
    const DgaMorphism f = self_map(
        a, {{"x", -x}, {"y", y}, {"a", aa + x * x}, {"b", b + 2 * (y * aa) + x * x * y}});
    const DgaMorphism g = self_map(a, {{"a", 2 * aa}, {"b", 4 * b}});
    const DgaMorphism gf = compose(g, f);
    EXPECT_TRUE(gf.image_of(*a.gens().find("a")) == 2 * aa + x * x);
    // Linear parts multiply contravariantly under composition.
    EXPECT_TRUE(gf.linear_part(4) == g.linear_part(4) * f.linear_part(4));
    // Restriction below degree 4 forgets the top generators.
    const DgaMorphism f3 = f.restrict(3);
    EXPECT_TRUE(f3.src().same_as(m.truncated(3)));
    EXPECT_TRUE(f3.image_of(*a.gens().find("x")) == -x);
    // Identity morphism behaves neutrally.
    const DgaMorphism id = DgaMorphism::identity(a);
    EXPECT_TRUE(compose(f, id) == f);
    EXPECT_TRUE(compose(id, f) == f);
    EXPECT_TRUE(id.linear_part_is_identity());
}

TEST(Morphisms, InverseOfSampledEquivalences) {
    SampleRng rng(307);
    for (const auto& name : {"s2", "cp2", "s3s3", "s2s4", "triple36"}) {
        const SullivanModel m = load(name);
        const Algebra a = m.algebra();
        const DgaMorphism id = DgaMorphism::identity(a);
        for (int i = 0; i < 10; ++i) {
            const auto f = sample_self_equivalence(a, rng);
            if (!f) continue;
            const DgaMorphism inv = f->inverse();
            EXPECT_TRUE(compose(inv, *f) == id) << name;
            EXPECT_TRUE(compose(*f, inv) == id) << name;
        }
    }
}

TEST(Morphisms, NonEquivalenceDetected) {
    const SullivanModel m = load("s3s3");
    const Algebra a = m.algebra();
    const GcaElement ea = GcaElement::generator(a.set(), *a.gens().find("a"));
    // a -> 0 collapses a generator: not an equivalence.
    const DgaMorphism f = self_map(a, {{"a", GcaElement::zero(a.set())}});
    EXPECT_FALSE(f.is_equivalence());
    EXPECT_THROW(f.inverse(), error);
    // a -> b, b -> a swaps generators: an equivalence.
    const GcaElement eb = GcaElement::generator(a.set(), *a.gens().find("b"));
    const DgaMorphism swap = self_map(a, {{"a", eb}, {"b", ea}});
    EXPECT_TRUE(swap.is_equivalence());
}

TEST(Cylinder, DifferentialSquaresToZero) {
    const SullivanModel m = load("s2s4");
    const Cylinder cyl(m.algebra());
    SampleRng rng(311);
    for (int i = 0; i < 100; ++i) {
        const GcaElement e = fixtures::random_element(cyl.set(), rng.range(2, 10), rng);
        EXPECT_TRUE(cyl.D(cyl.D(e)).is_zero());
        // S is a differential's contraction: S o S = 0 on generators' span.
        EXPECT_TRUE(cyl.S(cyl.S(e)).is_zero());
    }
}

TEST(Cylinder, ExpThetaIsADgaMapAndFreezesKnownValue) {
    const SullivanModel m = load("s2");
    const Cylinder cyl(m.algebra());
    // Construction re-checks the chain condition on every generator.
    const DgaMorphism exp = cyl.exp_theta_morphism();
    // The morphism goes from the base into the cylinder, indexed by base ids.
    EXPECT_TRUE(exp.src().same_as(m.algebra()));
    const GenId y = *m.gens().find("y");
    EXPECT_EQ(to_string(exp.image_of(y)), "2*x.bar*x + x.bar*x.hat + y + y.hat");
    const GenId x = *m.gens().find("x");
    EXPECT_EQ(to_string(exp.image_of(x)), "x + x.hat");
}

TEST(Cylinder, SdOrbitTerminates) {
    for (const auto& name : {"s2", "cp2", "s2s4", "tower7", "borel"}) {
        const SullivanModel m = load(name);
        const Cylinder cyl(m.algebra());
        for (GenId g : m.algebra().gen_ids()) {
            const auto orbit = cyl.sd_orbit(cyl.S(cyl.D(
                GcaElement::generator(cyl.set(), cyl.copy_id(g)))));
            EXPECT_LE(orbit.size(),
                      static_cast<std::size_t>(m.gens().degree_of(g) + 2))
                << name;
        }
    }
}

TEST(Homotopies, TrivialHomotopyVerifies) {
    const SullivanModel m = load("s2s4");
    const Algebra a = m.algebra();
    const DgaMorphism id = DgaMorphism::identity(a);
    const Homotopy h = Homotopy::trivial(id);
    const HomotopyCheck check = verify_homotopy(h, id, id);
    EXPECT_TRUE(check.ok) << check.failure;
}

TEST(Homotopies, BrokenHomotopyIsRejected) {
    const SullivanModel m = load("s2");
    const Algebra a = m.algebra();
    const DgaMorphism id = DgaMorphism::identity(a);
    auto cyl = std::make_shared<const Cylinder>(a);
    std::vector<GcaElement> on_copy(a.gens().count()), on_bar(a.gens().count()),
        on_hat(a.gens().count());
    for (GenId g : a.gen_ids()) on_copy[g] = GcaElement::generator(a.set(), g);
    // A stray closed bar value is harmless: homotopies are not unique.
    on_bar[*a.gens().find("y")] =
        GcaElement::generator(a.set(), *a.gens().find("x"));
    const Homotopy benign(cyl, a, on_copy, on_bar, on_hat);
    EXPECT_TRUE(verify_homotopy(benign, id, id).ok);
    // A nonzero hat value contradicts D(bar) = hat against d(F(bar)) = 0.
    on_bar[*a.gens().find("y")] = GcaElement::zero(a.set());
    on_hat[*a.gens().find("y")] =
        GcaElement::generator(a.set(), *a.gens().find("y"));
    const Homotopy h(cyl, a, on_copy, on_bar, on_hat);
    const HomotopyCheck check = verify_homotopy(h, id, id);
    EXPECT_FALSE(check.ok);
    EXPECT_NE(check.failure.find("chain"), std::string::npos);
}

TEST(Coboundary, ExactPerturbationYieldsVerifiedHomotopy) {
    const SullivanModel m = load("s2w6");
    const Algebra a = m.algebra();
    const GcaElement x = GcaElement::generator(a.set(), *a.gens().find("x"));
    const GcaElement y = GcaElement::generator(a.set(), *a.gens().find("y"));
    const GcaElement w = GcaElement::generator(a.set(), *a.gens().find("w"));
    const DgaMorphism alpha = self_map(a, {{"w", w + x * x * x}});
    const DgaMorphism beta = DgaMorphism::identity(a);
    const CoboundaryHomotopy res = coboundary_homotopy(alpha, beta);
    ASSERT_TRUE(res.homotopic()) << res.obstruction;
    const HomotopyCheck check = verify_homotopy(*res.homotopy, alpha, beta);
    EXPECT_TRUE(check.ok) << check.failure;
    // The bar value is the (sign-adjusted) primitive of x^3 = d(x y).
    const GenId wid = *a.gens().find("w");
    EXPECT_TRUE(res.homotopy->on_bar(wid) == -(x * y));
    EXPECT_TRUE(res.homotopy->on_hat(wid) == -(x * x * x));
}

TEST(Coboundary, NonExactDifferenceIsObstructed) {
    const SullivanModel m = load("abw6");
    const Algebra a = m.algebra();
    const GcaElement ea = GcaElement::generator(a.set(), *a.gens().find("a"));
    const GcaElement eb = GcaElement::generator(a.set(), *a.gens().find("b"));
    const GcaElement w = GcaElement::generator(a.set(), *a.gens().find("w"));
    const DgaMorphism alpha = self_map(a, {{"w", w + 2 * (ea * eb)}});
    const CoboundaryHomotopy res =
        coboundary_homotopy(alpha, DgaMorphism::identity(a));
    EXPECT_FALSE(res.homotopic());
    EXPECT_NE(res.obstruction.find("nonzero cohomology class"), std::string::npos);
}

TEST(Coboundary, RejectsMapsDifferingBelowTheTop) {
    const SullivanModel m = load("abw6");
    const Algebra a = m.algebra();
    const GcaElement ea = GcaElement::generator(a.set(), *a.gens().find("a"));
    const GcaElement eb = GcaElement::generator(a.set(), *a.gens().find("b"));
    const DgaMorphism alpha = self_map(a, {{"a", ea + eb}});
    EXPECT_THROW(coboundary_homotopy(alpha, DgaMorphism::identity(a)), compute_error);
}

TEST(NormalizeTop, LowerHomotopyFoldsIntoCocycleCorrection) {
    const SullivanModel m = load("tower7");
    const Algebra a7 = m.truncated(7);
    const Algebra a6 = m.truncated(6);
    const GcaElement x = GcaElement::generator(m.set(), *m.gens().find("x"));
    const GcaElement y = GcaElement::generator(m.set(), *m.gens().find("y"));
    const GcaElement w = GcaElement::generator(m.set(), *m.gens().find("w"));
    const GcaElement t = GcaElement::generator(m.set(), *m.gens().find("t"));

    // Below the top: w -> w + x^3 is homotopic to the identity.
    const DgaMorphism pert6 = self_map(a6, {{"w", w + x * x * x}});
    const CoboundaryHomotopy below =
        coboundary_homotopy(DgaMorphism::identity(a6), pert6);
    ASSERT_TRUE(below.homotopic()) << below.obstruction;

    // Full map: the top image must compensate d t = x*w.
    const DgaMorphism alpha =
        self_map(a7, {{"w", w + x * x * x}, {"t", t + x * x * y}});
    const DgaMorphism beta = DgaMorphism::identity(a7);
    const NormalizedTop norm = normalize_top(alpha, beta, 7, *below.homotopy);
    // The correction absorbs the perturbation entirely: alpha ~ identity.
    EXPECT_TRUE(norm.alpha_prime == beta);
    EXPECT_TRUE(norm.y_prime.at(*m.gens().find("t")).is_zero());
    const HomotopyCheck check = verify_homotopy(norm.homotopy, norm.alpha_prime, alpha);
    EXPECT_TRUE(check.ok) << check.failure;

    // On a model whose top generator is closed, a non-exact cocycle
    // perturbation on top survives as the correction itself.
    const SullivanModel m8 = load("stage8");
    const Algebra b8 = m8.truncated(8);
    const Algebra b7 = m8.truncated(7);
    const GcaElement x8 = GcaElement::generator(m8.set(), *m8.gens().find("x"));
    const GcaElement w8 = GcaElement::generator(m8.set(), *m8.gens().find("w"));
    const GcaElement t8 = GcaElement::generator(m8.set(), *m8.gens().find("t"));
    const DgaMorphism pert7 = self_map(b7, {{"w", w8 + x8 * x8 * x8}});
    const CoboundaryHomotopy below8 =
        coboundary_homotopy(DgaMorphism::identity(b7), pert7);
    ASSERT_TRUE(below8.homotopic()) << below8.obstruction;
    const DgaMorphism alpha2 =
        self_map(b8, {{"w", w8 + x8 * x8 * x8}, {"t", t8 + x8 * w8}});
    const NormalizedTop norm2 =
        normalize_top(alpha2, DgaMorphism::identity(b8), 8, *below8.homotopy);
    const GcaElement y2 = norm2.y_prime.at(*m8.gens().find("t"));
    EXPECT_TRUE(y2 == x8 * w8);
    EXPECT_TRUE(b8.d(y2).is_zero());
    const HomotopyCheck check2 =
        verify_homotopy(norm2.homotopy, norm2.alpha_prime, alpha2);
    EXPECT_TRUE(check2.ok) << check2.failure;
}
