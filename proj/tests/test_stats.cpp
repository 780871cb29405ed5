#include <doctest.h>

#include "oracles.hpp"
#include "posthoc/rng.hpp"
#include "posthoc/stats.hpp"

using namespace posthoc;

namespace {

Interaction make_round(Rng& rng, const BanditConfig& cfg) {
  Interaction x;
  x.context.resize(cfg.context_dim);
  x.posthoc.resize(cfg.posthoc_dim);
  for (int i = 0; i < cfg.context_dim; ++i) x.context(i) = rng.gaussian();
  for (int i = 0; i < cfg.posthoc_dim; ++i) x.posthoc(i) = rng.gaussian();
  x.action = rng.uniform_int(cfg.num_actions);
  x.loss = rng.gaussian();
  return x;
}

}  // namespace

TEST_CASE("fresh stats start at the ridge identity") {
  BanditConfig cfg{2, 2, 1, 0.1, 1.0};
  SufficientStats stats(cfg);
  CHECK(stats.ctc(0).isApprox(Eigen::MatrixXd::Identity(2, 2)));
  CHECK(stats.ptp(1).isApprox(Eigen::MatrixXd::Identity(1, 1)));
  CHECK(stats.ctp().isZero());
  CHECK(stats.ctl(0).isZero());
  CHECK(stats.count(0) == 0);
  CHECK(stats.total() == 0);
}

TEST_CASE("one observation lands in the right blocks") {
  BanditConfig cfg{2, 2, 1, 0.1, 1.0};
  SufficientStats stats(cfg);
  Interaction x;
  x.context = Eigen::Vector2d(1.0, 0.0);
  x.posthoc = Eigen::VectorXd::Constant(1, 2.0);
  x.action = 0;
  x.loss = 3.0;
  stats.observe(x);

  Eigen::Matrix2d expected;
  expected << 2.0, 0.0, 0.0, 1.0;
  CHECK(stats.ctc(0).isApprox(expected));
  CHECK(stats.ctc(1).isApprox(Eigen::MatrixXd::Identity(2, 2)));
  CHECK(stats.ctc().isApprox(expected));
  CHECK(stats.ptp(0)(0, 0) == doctest::Approx(5.0));   // 1 + 2^2
  CHECK(stats.ptp(1)(0, 0) == doctest::Approx(1.0));
  CHECK(stats.ptp()(0, 0) == doctest::Approx(5.0));
  CHECK(stats.ctp()(0, 0) == doctest::Approx(2.0));
  CHECK(stats.ctp()(1, 0) == doctest::Approx(0.0));
  CHECK(stats.ctl(0).isApprox(Eigen::Vector2d(3.0, 0.0)));
  CHECK(stats.ptl(0)(0) == doctest::Approx(6.0));
  CHECK(stats.ctl(1).isZero());
  CHECK(stats.count(0) == 1);
  CHECK(stats.count(1) == 0);
  CHECK(stats.total() == 1);
}

TEST_CASE("50 random rounds match batch recomputation within 1e-10") {
  BanditConfig cfg{4, 5, 2, 0.1, 0.7};
  Rng rng(123);
  std::vector<Interaction> rounds;
  SufficientStats stats(cfg);
  for (int t = 0; t < 50; ++t) {
    rounds.push_back(make_round(rng, cfg));
    stats.observe(rounds.back());
  }
  const auto ref = oracles::batch_stats(rounds, cfg);
  for (int a = 0; a < cfg.num_actions; ++a) {
    CHECK((stats.ctc(a) - ref.ctc_a[a]).cwiseAbs().maxCoeff() < 1e-10);
    CHECK((stats.ptp(a) - ref.ptp_a[a]).cwiseAbs().maxCoeff() < 1e-10);
    CHECK((stats.ctl(a) - ref.ctl_a[a]).cwiseAbs().maxCoeff() < 1e-10);
    CHECK((stats.ptl(a) - ref.ptl_a[a]).cwiseAbs().maxCoeff() < 1e-10);
    CHECK(stats.count(a) == ref.count_a[a]);
  }
  CHECK((stats.ctc() - ref.ctc).cwiseAbs().maxCoeff() < 1e-10);
  CHECK((stats.ptp() - ref.ptp).cwiseAbs().maxCoeff() < 1e-10);
  CHECK((stats.ctp() - ref.ctp).cwiseAbs().maxCoeff() < 1e-10);
}

TEST_CASE("malformed observations are rejected") {
  BanditConfig cfg{2, 3, 2, 0.1, 1.0};
  SufficientStats stats(cfg);
  Interaction x;
  x.context = Eigen::VectorXd::Zero(3);
  x.posthoc = Eigen::VectorXd::Zero(2);

  SUBCASE("context dimension") {
    x.context = Eigen::VectorXd::Zero(4);
    CHECK_THROWS_AS(stats.observe(x), std::invalid_argument);
  }
  SUBCASE("posthoc dimension") {
    x.posthoc = Eigen::VectorXd::Zero(1);
    CHECK_THROWS_AS(stats.observe(x), std::invalid_argument);
  }
  SUBCASE("action below range") {
    x.action = -1;
    CHECK_THROWS_AS(stats.observe(x), std::invalid_argument);
  }
  SUBCASE("action above range") {
    x.action = 2;
    CHECK_THROWS_AS(stats.observe(x), std::invalid_argument);
  }
}

TEST_CASE("config validation") {
  CHECK_THROWS_AS((BanditConfig{1, 1, 1, 0.1, 1.0}.validate()), std::invalid_argument);
  CHECK_THROWS_AS((BanditConfig{2, 0, 1, 0.1, 1.0}.validate()), std::invalid_argument);
  CHECK_THROWS_AS((BanditConfig{2, 1, 1, 0.1, 0.0}.validate()), std::invalid_argument);
  CHECK_THROWS_AS((BanditConfig{2, 1, 1, -0.5, 1.0}.validate()), std::invalid_argument);
  CHECK_NOTHROW((BanditConfig{2, 1, 1, 0.0, 1e-9}.validate()));
}
