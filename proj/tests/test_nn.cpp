// SPDX-License-Identifier: Apache-2.0
#include <doctest.h>

#include <cmath>
#include <numeric>

#include "gradcheck.hpp"
#include "proofpilot/engine/episode.hpp"
#include "proofpilot/nn/network.hpp"
#include "proofpilot/rl/neural_policy.hpp"
#include "test_util.hpp"

using namespace proofpilot;
using namespace proofpilot::nn;
using doctest::Approx;

namespace {

NetworkConfig small_config(std::uint32_t input_dim = 24, std::uint32_t units = 8) {
  NetworkConfig cfg;
  cfg.input_dim = input_dim;
  cfg.units = units;
  return cfg;
}

Eigen::VectorXd random_vector(Rng &rng, Eigen::Index n) {
  Eigen::VectorXd v(n);
  for (Eigen::Index i = 0; i < n; ++i) v[i] = uniform01(rng) * 2.0 - 1.0;
  return v;
}

}  // namespace

TEST_SUITE("nn") {

TEST_CASE("parameter layout and initialization") {
  NetworkConfig cfg = small_config();
  PolicyParameters p = PolicyParameters::initialized(cfg, 5);
  const auto &t = p.tensors();
  REQUIRE(t.size() == 2 * cfg.layers + 5);
  CHECK(t[p.embed_weight_index(0)].rows == 8);
  CHECK(t[p.embed_weight_index(0)].cols == 24);
  CHECK(t[p.combine_hidden_weight_index()].cols == 16);
  CHECK(t[p.attention_index()].rows == 8 + fol::kNumRules);
  CHECK(t[p.attention_index()].cols == 8);
  CHECK(p.all_finite());
  // Glorot bound and zero biases.
  for (const TensorSpec &s : t) {
    const double bound = std::sqrt(6.0 / (s.rows + s.cols));
    for (std::size_t i = 0; i < s.size(); ++i) {
      const double v = p.values()[s.offset + i];
      if (s.cols == 1) {
        CHECK(v == 0.0);
      } else {
        CHECK(std::abs(v) <= bound);
      }
    }
  }
  PolicyParameters q = PolicyParameters::initialized(cfg, 5);
  CHECK(p.values() == q.values());
  CHECK(p.values() != PolicyParameters::initialized(cfg, 6).values());

  NetworkConfig bad = cfg;
  bad.dropout = 1.0;
  CHECK_THROWS(bad.validate());
  bad = cfg;
  bad.units = 0;
  CHECK_THROWS(bad.validate());
}

TEST_CASE("zero input with zero biases embeds to zero") {
  PolicyParameters p = PolicyParameters::initialized(small_config(), 1);
  SparseFeatureVector zero(24);
  CHECK(embed(zero, p, Mode::Eval).isZero());
  CHECK_THROWS_AS(embed(SparseFeatureVector(23), p, Mode::Eval), ShapeError);
}

TEST_CASE("eval is deterministic and train dropout follows the seed") {
  PolicyParameters p = PolicyParameters::initialized(small_config(24, 32), 1);
  Rng rng(3);
  SparseFeatureVector v = testing::random_row(rng, 24);
  CHECK(embed(v, p, Mode::Eval) == embed(v, p, Mode::Eval));

  Rng a(9), b(9), c(10);
  EmbedTrace ta, tb, tc;
  Eigen::VectorXd ea = embed(v, p, Mode::Train, &a, &ta);
  Eigen::VectorXd eb = embed(v, p, Mode::Train, &b, &tb);
  Eigen::VectorXd ec = embed(v, p, Mode::Train, &c, &tc);
  CHECK(ea == eb);
  REQUIRE(ta.mask.size() == 2);
  CHECK(ta.mask[0] == tb.mask[0]);
  CHECK(ta.mask[0] != tc.mask[0]);
  // Dropout after the first layer only; kept units scaled by 1/keep.
  CHECK(ta.mask[1].size() == 0);
  const double keep = 1.0 - 0.57;
  for (Eigen::Index i = 0; i < ta.mask[0].size(); ++i) {
    const double m = ta.mask[0][i];
    CHECK((m == 0.0 || m == Approx(1.0 / keep)));
  }
  CHECK_THROWS(embed(v, p, Mode::Train));
}

TEST_CASE("conjecture pooling") {
  Rng rng(4);
  Eigen::VectorXd v = random_vector(rng, 6);
  std::vector<Eigen::VectorXd> one{v};
  CHECK(pool_conjecture(one) == v);
  std::vector<Eigen::VectorXd> same{v, v};
  CHECK((pool_conjecture(same) - v).norm() < 1e-15);
  std::vector<Eigen::VectorXd> opposite{v, -v};
  CHECK(pool_conjecture(opposite).isZero());
}

TEST_CASE("combine keeps the skip path") {
  PolicyParameters p = PolicyParameters::initialized(small_config(), 2);
  Rng rng(5);
  Eigen::VectorXd hp = random_vector(rng, 8), hc = random_vector(rng, 8);
  PolicyParameters zero_f = p;
  for (std::size_t t : {zero_f.combine_hidden_weight_index(), zero_f.combine_out_weight_index()}) {
    zero_f.matrix(t).setZero();
  }
  CHECK((combine(hp, hc, zero_f) - (hp + hc)).norm() < 1e-15);
  CHECK(combine(Eigen::VectorXd::Zero(8), Eigen::VectorXd::Zero(8), p).isZero());
  // combine(h, 0) minus F(h || 0) is h.
  Eigen::VectorXd x = Eigen::VectorXd::Zero(16);
  x.head(8) = hp;
  Eigen::VectorXd hidden = (p.matrix(p.combine_hidden_weight_index()) * x + p.vector(p.combine_hidden_bias_index()))
                               .cwiseMax(0.0);
  Eigen::VectorXd f = p.matrix(p.combine_out_weight_index()) * hidden + p.vector(p.combine_out_bias_index());
  CHECK((combine(hp, Eigen::VectorXd::Zero(8), p) - f - hp).norm() < 1e-14);
}

TEST_CASE("attention is bilinear") {
  Rng rng(6);
  const Eigen::Index e = 4, r = 2;
  RowMatrix W = RowMatrix::Zero(e + r, e);
  Eigen::MatrixXd A = Eigen::MatrixXd::Random(e + r, 3);
  Eigen::MatrixXd C = Eigen::MatrixXd::Random(e, 2);
  Eigen::MatrixXd H0 = attention(A, C, W);
  CHECK(H0.isZero());
  auto probs = action_distribution(H0);
  for (double q : probs) CHECK(q == Approx(1.0 / 3.0));

  for (Eigen::Index i = 0; i < W.size(); ++i) W.data()[i] = uniform01(rng) - 0.5;
  Eigen::MatrixXd H = attention(A, C, W);
  CHECK(H.rows() == 3);
  CHECK(H.cols() == 2);
  CHECK((attention(2.0 * A, C, W) - 2.0 * H).norm() < 1e-12);
  Eigen::MatrixXd a1 = A.col(0), c1 = C.col(0);
  CHECK(attention(a1, c1, W)(0, 0) == Approx((a1.transpose() * W * c1)(0, 0)));
  CHECK_THROWS_AS(attention(A, Eigen::MatrixXd::Random(e + 1, 2), W), ShapeError);
}

TEST_CASE("softmax examples") {
  std::vector<double> eq{0.3, 0.3, 0.3, 0.3};
  for (double q : softmax(eq)) CHECK(q == Approx(0.25));
  std::vector<double> one{42.0};
  CHECK(softmax(one) == std::vector<double>{1.0});
  std::vector<double> two{std::log(2.0), 0.0};
  auto p = softmax(two);
  CHECK(p[0] == Approx(2.0 / 3.0).epsilon(1e-15));
  CHECK(p[1] == Approx(1.0 / 3.0).epsilon(1e-15));
  std::vector<double> big{1000.0, 0.0, -1000.0};
  auto q = softmax(big);
  CHECK(q[0] == Approx(1.0));
  std::vector<double> bad{1.0, std::nan("")};
  CHECK_THROWS_AS(softmax(bad), NumericalError);
}

TEST_CASE("action distribution pools each row by its maximum") {
  Eigen::MatrixXd H(2, 3);
  H << 0.0, 2.0, 1.0,  //
      std::log(2.0) + 2.0, -5.0, 0.0;
  std::vector<Eigen::Index> arg;
  std::vector<double> scores;
  auto p = action_distribution(H, &arg, &scores);
  CHECK(arg == std::vector<Eigen::Index>{1, 0});
  CHECK(scores[0] == 2.0);
  CHECK(p[1] == Approx(2.0 / 3.0));
}

TEST_CASE("forward on a cold start and under permutation") {
  Rng rng(7);
  testing::GradCase gc = testing::random_grad_case(rng, 4, 1, 1);
  testing::GradExample ex = gc.batch[0];

  ex.processed.clear();
  ForwardCache cold = forward(StateInput{gc.table, ex.processed, ex.actions}, gc.params, Mode::Eval);
  CHECK(cold.cold_start);
  CHECK(cold.C.cols() == 1);
  CHECK((cold.C.col(0) - cold.conjecture).norm() == 0.0);
  CHECK(std::accumulate(cold.probs.begin(), cold.probs.end(), 0.0) == Approx(1.0).epsilon(1e-12));

  ex = gc.batch[0];
  ForwardCache base = forward(StateInput{gc.table, ex.processed, ex.actions}, gc.params, Mode::Eval);
  CHECK_FALSE(base.cold_start);
  CHECK(std::abs(std::accumulate(base.probs.begin(), base.probs.end(), 0.0) - 1.0) < 1e-9);
  std::vector<engine::Action> reversed(ex.actions.rbegin(), ex.actions.rend());
  ForwardCache rev = forward(StateInput{gc.table, ex.processed, reversed}, gc.params, Mode::Eval);
  for (std::size_t i = 0; i < base.probs.size(); ++i) {
    CHECK(rev.probs[base.probs.size() - 1 - i] == Approx(base.probs[i]).epsilon(1e-12));
  }
}

TEST_CASE("entropy gradient vanishes at the uniform distribution") {
  std::vector<double> uniform(5, 0.2);
  auto g = rl::score_gradient(uniform, 0, 0.0, 0.7);
  for (double v : g) CHECK(std::abs(v) < 1e-16);
}

TEST_CASE("zero reward and zero lambda give a zero gradient") {
  Rng rng(8);
  testing::GradCase gc = testing::random_grad_case(rng, 3, 2, 2);
  for (auto &ex : gc.batch) ex.reward = 0.0;
  auto g = testing::analytic_gradient(gc, 0.0);
  CHECK(std::all_of(g.begin(), g.end(), [](double v) { return v == 0.0; }));
}

TEST_CASE("gradient matches central finite differences (e=8, M=3, N=2)") {
  Rng rng(derive_seed(314, {1}));
  testing::GradCase gc = testing::random_grad_case(rng, 3, 2, 2);
  auto rep = testing::check_gradient(gc, 0.004);
  MESSAGE("max entry rel err " << rep.max_rel << ", norm rel err " << rep.norm_rel);
  CHECK(rep.norm_rel < 1e-4);
  CHECK(rep.checked == gc.params.size());
}

TEST_CASE("gradient on a cold start") {
  Rng rng(derive_seed(315, {1}));
  testing::GradCase gc = testing::random_grad_case(rng, 3, 0, 1);
  auto rep = testing::check_gradient(gc, 0.05);
  CHECK(rep.norm_rel < 1e-4);
}

TEST_CASE("incremental neural policy agrees with the full forward pass") {
  fol::Problem p = fol::parse_problem_file(std::string(PROOFPILOT_CORPUS_DIR) + "/unsat/chain06_noise.p");
  features::VectorizerConfig vcfg;
  NetworkConfig cfg;
  cfg.input_dim = vcfg.dimension();
  cfg.units = 16;
  auto params = std::make_shared<const PolicyParameters>(PolicyParameters::initialized(cfg, 17));
  rl::NeuralPolicy policy(params, vcfg, rl::SamplingConfig{1.0, 1000});
  engine::Saturation e(p);
  policy.begin_episode(e);
  Rng rng(1);
  for (int step = 0; step < 25 && !e.saturated() && !e.empty_clause(); ++step) {
    auto incremental = policy.distribution(e);
    auto table = policy.features();
    ForwardCache full = forward(StateInput{*table, e.state().processed, e.state().actions}, *params, Mode::Eval);
    REQUIRE(incremental.size() == full.probs.size());
    for (std::size_t i = 0; i < incremental.size(); ++i) CHECK(incremental[i] == Approx(full.probs[i]).epsilon(1e-9));
    auto d = policy.select(e, rng);
    CHECK(d.probability == Approx(full.probs[d.index]).epsilon(1e-9));
    e.execute_index(d.index);
  }
}

}  // TEST_SUITE
