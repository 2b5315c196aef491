#include <gtest/gtest.h>

#include <cmath>
#include <sstream>

#include "tcert/error.hpp"
#include "tcert/modpoly.hpp"

using namespace tcert;

namespace {

const ModularPolynomial& phi(long p) {
  static std::map<long, ModularPolynomial> cache;
  auto it = cache.find(p);
  if (it == cache.end()) it = cache.emplace(p, compute_phi_p(p)).first;
  return it->second;
}

mpz_class c(const ModularPolynomial& m, unsigned a, unsigned b) { return m.coeffs.coeff({a, b}); }

}  // namespace

TEST(Modpoly, PhiTwoMatchesTable) {
  EXPECT_EQ(phi(2).coeffs, phi2_reference().coeffs);
  EXPECT_EQ(c(phi(2), 0, 0), mpz_class("-157464000000000"));
  EXPECT_EQ(c(phi(2), 1, 0), mpz_class("8748000000"));
  EXPECT_EQ(c(phi(2), 1, 1), 40773375);
  EXPECT_EQ(c(phi(2), 2, 0), -162000);
  EXPECT_EQ(c(phi(2), 2, 1), 1488);
  EXPECT_EQ(c(phi(2), 2, 2), -1);
}

TEST(Modpoly, PhiThreeKnownCoefficients) {
  const ModularPolynomial& m = phi(3);
  EXPECT_EQ(c(m, 4, 0), 1);
  EXPECT_EQ(c(m, 3, 3), -1);
  EXPECT_EQ(c(m, 3, 2), 2232);
  EXPECT_EQ(c(m, 3, 1), -1069956);
  EXPECT_EQ(c(m, 3, 0), 36864000);
  EXPECT_EQ(c(m, 2, 2), mpz_class("2587918086"));
  EXPECT_EQ(c(m, 2, 1), mpz_class("8900222976000"));
  EXPECT_EQ(c(m, 2, 0), mpz_class("452984832000000"));
  EXPECT_EQ(c(m, 1, 1), mpz_class("-770845966336000000"));
  EXPECT_EQ(c(m, 1, 0), mpz_class("1855425871872000000000"));
  EXPECT_EQ(c(m, 0, 0), 0);
}

TEST(Modpoly, ShapeForAllLevels) {
  for (long p : {2, 3, 5, 7}) {
    const ModularPolynomial& m = phi(p);
    EXPECT_TRUE(m.symmetric());
    EXPECT_TRUE(m.monic_in_x());
    EXPECT_EQ(m.degree_x(), static_cast<unsigned>(p + 1));
    EXPECT_EQ(m.degree_y(), static_cast<unsigned>(p + 1));
    EXPECT_EQ(c(m, p + 1, p + 1), 0);
    EXPECT_EQ(c(m, p, p), -1);
  }
}

TEST(Modpoly, IdentityHolds) {
  for (long p : {2, 3, 5}) {
    const IdentityReport r = verify_phi_identity(phi(p), 30);
    EXPECT_TRUE(r.holds) << p;
    EXPECT_FALSE(r.first_nonzero.has_value());
  }
}

TEST(Modpoly, IdentityDetectsCorruption) {
  ModularPolynomial bad = phi(2);
  bad.coeffs.add_term({1, 0}, 1);
  const IdentityReport r = verify_phi_identity(bad, 30);
  EXPECT_FALSE(r.holds);
  EXPECT_TRUE(r.first_nonzero.has_value());
}

TEST(Modpoly, CmValues) {
  EXPECT_EQ(phi(2).coeffs.eval({mpq_class(1728), mpq_class(287496)}), 0);
  EXPECT_EQ(phi(2).coeffs.eval({mpq_class(54000), mpq_class(0)}), 0);
  EXPECT_EQ(phi(3).coeffs.eval({mpq_class(-12288000), mpq_class(0)}), 0);
}

TEST(Modpoly, HeightBounds) {
  for (long p : {2, 3, 5, 7}) {
    const PhiHeightReport r = certify_phi_height(phi(p));
    EXPECT_TRUE(r.report.all_hold()) << p;
    EXPECT_EQ(r.height, phi(p).coeffs.height());
    EXPECT_EQ(r.length, phi(p).coeffs.length());
    // Independent check of the explicit prime-level bound in doubles.
    const double bound = 6 * p * std::log(p) + 16 * p + 14 * std::sqrt(p) * std::log(p);
    EXPECT_LT(std::log(r.height.get_d()), bound);
  }
}

TEST(Modpoly, LevelInvariants) {
  const LevelInvariants v = level_invariants(12);
  EXPECT_EQ(v.psi, 24);
  EXPECT_NEAR(v.kappa.approx(), std::log(2.0) / 2 + std::log(3.0) / 3, 1e-15);
  EXPECT_NEAR(v.lambda.approx(), std::log(2.0) / 2 + std::log(3.0) / 4, 1e-15);
  EXPECT_EQ(level_invariants(7).psi, 8);
  EXPECT_EQ(level_invariants(1).psi, 1);
  EXPECT_THROW(level_invariants(0), Error);
}

TEST(Modpoly, UnsupportedLevel) {
  try {
    compute_phi_p(11);
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.kind(), ErrorKind::InvalidArgument);
  }
}

TEST(Modpoly, FileRoundTrip) {
  std::stringstream ss;
  write_modpoly(ss, phi(5));
  EXPECT_EQ(read_modpoly(ss, 5).coeffs, phi(5).coeffs);
  std::stringstream bad("1 0 x\n");
  EXPECT_THROW(read_modpoly(bad, 2), Error);
}

TEST(Modpoly, SpecializationAtI) {
  // tau = i: j = 1728, j(2i) = 287496 is a rational root of Phi_2(X, 1728).
  const SpecializationReport r = specialization_degree(phi(2), AlgebraicNumber::integer(1728), CmData{1, 0, 1});
  ASSERT_TRUE(r.j_p_tau.has_value());
  EXPECT_NEAR(r.j_p_tau->re().approx(), 287496.0, 1e-6);
  ASSERT_TRUE(r.relevant_degree_lower.has_value());
  EXPECT_EQ(*r.relevant_degree_lower, 1);
  EXPECT_NE(std::find(r.rational_roots.begin(), r.rational_roots.end(), mpq_class(287496)), r.rational_roots.end());
  EXPECT_EQ(r.report.find("bertrand-cm")->status, Status::Holds);
}

TEST(Modpoly, SpecializationFiveAtI) {
  const SpecializationReport r = specialization_degree(phi(5), AlgebraicNumber::integer(1728), CmData{1, 0, 1});
  ASSERT_TRUE(r.relevant_degree_lower.has_value());
  EXPECT_GE(*r.relevant_degree_lower, 2);
  EXPECT_EQ(r.report.find("bertrand-cm")->status, Status::Holds);
  // Phi_5(X, 1728) also has a rational root, so the minimum over all factors is 1.
  EXPECT_EQ(r.min_degree_lower, 1);
}

TEST(Modpoly, SpecializationAtRho) {
  const SpecializationReport r = specialization_degree(phi(3), AlgebraicNumber::integer(0), CmData{1, 1, 1});
  ASSERT_TRUE(r.j_p_tau.has_value());
  EXPECT_NEAR(r.j_p_tau->re().approx(), -12288000.0, 1e-3);
  EXPECT_FALSE(r.report.any_fail());
}

TEST(Modpoly, SpecializationBadCm) {
  EXPECT_THROW(specialization_degree(phi(2), AlgebraicNumber::integer(1728), CmData{1, 0, -1}), Error);
}
