#include <gtest/gtest.h>

#include <sullivan/sullivan.hpp>

#include "helpers.hpp"

using namespace sullivan;
using fixtures::load;

TEST(Diagnostics, FiniteModelsPassEveryCheck) {
    for (const auto& name : {"s2", "s3", "s4", "s5", "s6", "s7", "cp2", "cp3", "hp2",
                             "s3s3", "s2s4", "s2s2", "s3s5", "half", "flag6",
                             "oddtower", "borel", "abwt"}) {
        const EllipticReport r = elliptic_check(load(name));
        EXPECT_TRUE(r.consistent) << name;
        for (const auto& c : r.checks) EXPECT_TRUE(c.pass) << name << ": " << c.name;
    }
}

TEST(Diagnostics, FormalDimensionsAndBetti) {
    EXPECT_EQ(*elliptic_check(load("s2")).formal_dimension, 2);
    EXPECT_EQ(*elliptic_check(load("cp3")).formal_dimension, 6);
    EXPECT_EQ(*elliptic_check(load("hp2")).formal_dimension, 8);
    EXPECT_EQ(*elliptic_check(load("s3s3")).formal_dimension, 6);
    EXPECT_EQ(*elliptic_check(load("oddtower")).formal_dimension, 15);
    EXPECT_EQ(*elliptic_check(load("borel")).formal_dimension, 8);
    const EllipticReport cp2 = elliptic_check(load("cp2"));
    ASSERT_GE(cp2.betti.size(), 5u);
    for (int i = 0; i <= 4; ++i)
        EXPECT_EQ(cp2.betti[static_cast<std::size_t>(i)], i % 2 == 0 ? 1 : 0);
}

TEST(Diagnostics, PolynomialAlgebraFails) {
    // A single closed even generator has unbounded cohomology: the formal
    // dimension never appears below the cap.
    const SullivanModel poly = SullivanModel::checked(
        Dga(make_generator_set({{"x", 2}}), std::vector<GcaElement>(1)));
    const EllipticReport r = elliptic_check(poly);
    EXPECT_FALSE(r.consistent);
    EXPECT_FALSE(r.formal_dimension.has_value());
    bool formal_dim_check_failed = false;
    for (const auto& c : r.checks)
        if (c.name == "formal dimension" && !c.pass) formal_dim_check_failed = true;
    EXPECT_TRUE(formal_dim_check_failed);
}

TEST(Diagnostics, NonFiniteModelsFailHonestly) {
    EXPECT_FALSE(elliptic_check(load("mixed")).consistent);
    EXPECT_FALSE(elliptic_check(load("abw6")).consistent);
    EXPECT_FALSE(elliptic_check(load("mixtop")).consistent);
}

TEST(Diagnostics, TrivialModelIsConsistent) {
    const EllipticReport r = elliptic_check(load("point"));
    EXPECT_TRUE(r.consistent);
    ASSERT_TRUE(r.formal_dimension.has_value());
    EXPECT_EQ(*r.formal_dimension, 0);
}

TEST(Diagnostics, CapControlsTheWindow) {
    const SullivanModel m = load("s6");  // formal dimension 6, default cap 24
    EXPECT_EQ(default_degree_cap(m), 24);
    const EllipticReport tight = elliptic_check(m, 12);
    EXPECT_TRUE(tight.consistent);
    EXPECT_EQ(tight.cap, 12);
    EXPECT_THROW(elliptic_check(m, 5), compute_error);  // below the top generator
}

TEST(Purity, PureModelsAndTheOddCohomologyCriterion) {
    const PurityReport s2s4 = f0_check(load("s2s4"));
    EXPECT_TRUE(s2s4.pure);
    EXPECT_TRUE(s2s4.dims_equal);
    EXPECT_TRUE(s2s4.criterion);
    EXPECT_TRUE(s2s4.h_odd_vanishes);
    EXPECT_TRUE(s2s4.agreement);

    const PurityReport s3s3 = f0_check(load("s3s3"));
    EXPECT_TRUE(s3s3.pure);  // trivially: no even generators
    EXPECT_FALSE(s3s3.dims_equal);
    EXPECT_FALSE(s3s3.criterion);
    EXPECT_FALSE(s3s3.h_odd_vanishes);  // H^3 is two-dimensional
    EXPECT_TRUE(s3s3.agreement);

    const PurityReport borel = f0_check(load("borel"));
    EXPECT_TRUE(borel.pure);
    EXPECT_TRUE(borel.criterion);
    EXPECT_TRUE(borel.h_odd_vanishes);

    // tower7 is pure with equal even/odd counts, yet [y*w - t*x] is a
    // surviving odd class: the count criterion predicts vanishing only for
    // finite-dimensional cohomology, and the report must expose the
    // disagreement rather than hide it.
    const PurityReport tower = f0_check(load("tower7"));
    EXPECT_TRUE(tower.pure);
    EXPECT_TRUE(tower.dims_equal);
    EXPECT_TRUE(tower.criterion);
    EXPECT_FALSE(tower.h_odd_vanishes);
    EXPECT_FALSE(tower.agreement);
}

TEST(Embedding, ClosedFormAmbientGroups) {
    const EmbeddingReport s3s3 = embedding_report(load("s3s3"), true);
    EXPECT_EQ(s3s3.ambient(), "GL(2,Q)");
    EXPECT_EQ(s3s3.reduced(), "GL(2,Q)");
    EXPECT_EQ(s3s3.finite_form(), "GL(2,Q)");

    const EmbeddingReport s2 = embedding_report(load("s2"), false);
    EXPECT_EQ(s2.ambient(), "(L^3 : GL(1,Q)) x GL(1,Q)");
    EXPECT_EQ(s2.reduced(), "GL(1,Q) x GL(1,Q)");

    const EmbeddingReport s2s4 = embedding_report(load("s2s4"), true);
    ASSERT_EQ(s2s4.factors.size(), 4u);
    for (const auto& f : s2s4.factors) {
        EXPECT_EQ(f.p, 1u);
        EXPECT_EQ(f.dim_l, 0u) << "degree " << f.degree;
    }
    EXPECT_EQ(s2s4.reduced(), "GL(1,Q) x GL(1,Q) x GL(1,Q) x GL(1,Q)");
    EXPECT_EQ(s2s4.finite_form(), "GL(1,Q) x GL(1,Q) x GL(1,Q) x GL(1,Q)");
    EXPECT_TRUE(s2s4.f0);
}

TEST(Embedding, TranslationPartsAreComputedNotAssumed) {
    // oddtower: every truncation has no cohomology in the next generator
    // degree, so all translation parts vanish.
    const EmbeddingReport odd = embedding_report(load("oddtower"), false);
    for (const auto& f : odd.factors) EXPECT_EQ(f.dim_l, 0u);
    // abwt keeps [a*b] alive in H^6 of the lower stage: the degree-6
    // factor carries a genuine one-dimensional translation part.
    const EmbeddingReport abwt = embedding_report(load("abwt"), true);
    ASSERT_EQ(abwt.factors.size(), 3u);
    EXPECT_EQ(abwt.factors[0].degree, 3);
    EXPECT_EQ(abwt.factors[0].p, 2u);
    EXPECT_EQ(abwt.factors[1].degree, 6);
    EXPECT_EQ(abwt.factors[1].dim_l, 1u);
    EXPECT_EQ(abwt.factors[2].dim_l, 0u);
    EXPECT_EQ(abwt.ambient(), "(L^11 : GL(1,Q)) x (L^6 : GL(1,Q)) x GL(2,Q)");
    EXPECT_EQ(abwt.reduced(), "GL(1,Q) x (L^6 : GL(1,Q)) x GL(2,Q)");
    EXPECT_EQ(abwt.finite_form(), "GL(2,Q) x GL(1,Q) x GL(1,Q)");
}

TEST(Embedding, PreconditionAndOverride) {
    EXPECT_THROW(embedding_report(load("mixed"), false), compute_error);
    EXPECT_NO_THROW(embedding_report(load("mixed"), false, true));
    const EmbeddingReport point = embedding_report(load("point"), false);
    EXPECT_EQ(point.ambient(), "trivial group");
}
