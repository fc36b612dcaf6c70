#include <gtest/gtest.h>

#include <cmath>
#include <numbers>

#include "translid/error.hpp"
#include "translid/model.hpp"

using namespace translid;

namespace {

EncodedSequence seq(std::vector<std::uint32_t> ids, std::uint32_t V) {
  return {std::move(ids), TokenizerMode::kPhonetic, V};
}

// Scalar LSTM (D = H = 1) with weights chosen by hand.
ModelParams scalar_model() {
  ModelParams p(2, 1, 1);
  p.embedding_row(1)[0] = 0.5;
  p.embedding_row(2)[0] = -0.8;
  const double W[4] = {0.1, 0.2, -0.3, 0.4}, U[4] = {0.05, -0.06, 0.07, 0.08},
               b[4] = {0.01, 1.0, 0.02, -0.01};
  for (std::size_t g = 0; g < 4; ++g) {
    p.input_weight(static_cast<Gate>(g), 0, 0) = W[g];
    p.recurrent_weight(static_cast<Gate>(g), 0, 0) = U[g];
    p.gate_bias()[g] = b[g];
  }
  p.output_weights()[0] = 0.7;
  p.output_bias() = -0.05;
  return p;
}

double objective(const ModelParams& p, const std::vector<std::uint32_t>& ids,
                 const std::vector<double>& mask, int label, double lambda) {
  return loss(forward_with_mask(p, ids, mask).score, label, p, lambda);
}

}  // namespace

TEST(Params, CountFromShapes) {
  // Embedding keeps a padding row 0 that is never read: (V+1)*D stored,
  // V*D trainable.
  EXPECT_EQ(ParamTensor::count(50, 8, 8), 961u);
  EXPECT_EQ(ParamTensor::count(50, 8, 8) - 8, 953u);
  EXPECT_EQ(ParamTensor::count(50, 8, 8), 51u * 8 + 8 * 32 + 8 * 32 + 32 + 8 + 1);
  const ModelParams p(4096, 8, 32);
  EXPECT_EQ(p.size(), ParamTensor::count(4096, 8, 32));
}

TEST(Params, BlocksTileTheBuffer) {
  ModelParams p(5, 3, 2);
  const auto total = p.embedding().size() + p.input_weights().size() + p.recurrent_weights().size() +
                     p.gate_bias().size() + p.output_weights().size() + 1;
  EXPECT_EQ(total, p.size());
  EXPECT_EQ(&p.output_bias(), &p.data().back());
  EXPECT_EQ(p.input_weights().data(), p.embedding().data() + p.embedding().size());
}

TEST(Params, RegularizedEntriesAreWeightMatrices) {
  ModelParams p(5, 3, 2);
  std::size_t regularized = 0;
  for (std::size_t i = 0; i < p.size(); ++i) regularized += p.is_regularized(i);
  EXPECT_EQ(regularized, p.input_weights().size() + p.recurrent_weights().size() + p.output_weights().size());
  EXPECT_FALSE(p.is_regularized(0));
  EXPECT_FALSE(p.is_regularized(p.size() - 1));
}

TEST(Init, DeterministicAndForgetBiasOne) {
  Hyperparams h{50, 8, 8, 0.2, 1e-4, 3};
  const auto a = init_params(h);
  const auto b = init_params(h);
  EXPECT_EQ(a, b);
  h.seed = 4;
  EXPECT_NE(a, init_params(h));
  auto fb = ModelParams(a).gate_bias(Gate::kForget);
  for (double x : fb) EXPECT_EQ(x, 1.0);
  for (double x : a.embedding_row(0)) EXPECT_EQ(x, 0.0);
  EXPECT_EQ(a.output_bias(), 0.0);
  // Glorot bound for the input weights.
  const double limit = std::sqrt(6.0 / (8 + 8));
  for (double x : a.input_weights()) EXPECT_LE(std::abs(x), limit);
}

TEST(Hyperparams, Validation) {
  Hyperparams h;
  EXPECT_NO_THROW(h.validate());
  h.dropout_rate = 1.0;
  EXPECT_THROW(h.validate(), Error);
  h = Hyperparams{};
  h.hidden_size = 0;
  EXPECT_THROW(h.validate(), Error);
  h = Hyperparams{};
  h.l2_lambda = -1;
  EXPECT_THROW(h.validate(), Error);
}

TEST(Forward, ZeroParamsGiveHalf) {
  const ModelParams p(10, 4, 3);
  for (auto ids : {std::vector<std::uint32_t>{1}, {3, 7, 10, 2}}) {
    const auto c = forward(p, seq(ids, 10));
    EXPECT_EQ(c.score, 0.5);
    EXPECT_EQ(predict(p, seq(ids, 10)).label, 0);  // tie goes to label 0
  }
}

TEST(Forward, ScalarLstmByHand) {
  const auto p = scalar_model();
  // Expected values evaluated independently from the LSTM recurrence.
  EXPECT_NEAR(forward(p, seq({1}, 2)).score, 0.48114131610003075, 1e-15);
  EXPECT_NEAR(forward(p, seq({1, 2}, 2)).score, 0.4929633483655625, 1e-15);
}

TEST(Forward, RejectsBadInput) {
  const ModelParams p(10, 2, 2);
  EXPECT_THROW(forward(p, seq({}, 10)), Error);
  EXPECT_THROW(forward(p, seq({11}, 10)), Error);
  EXPECT_THROW(forward(p, seq({0}, 10)), Error);
}

TEST(Dropout, InferenceMaskIsAllOnes) {
  const auto p = init_params({20, 4, 6, 0.5, 0, 1});
  const auto a = forward(p, seq({1, 5, 9}, 20));
  const auto b = forward(p, seq({1, 5, 9}, 20));
  EXPECT_EQ(a.score, b.score);
  for (double m : a.dropout_mask) EXPECT_EQ(m, 1.0);
}

TEST(Dropout, InvertedMaskHasUnitMean) {
  const auto p = init_params({20, 4, 16, 0.3, 0, 1});
  Rng rng(9);
  double sum = 0.0;
  std::size_t zeros = 0, n = 0;
  for (int t = 0; t < 4000; ++t) {
    const auto c = forward(p, seq({2, 3}, 20), 0.3, rng);
    for (double m : c.dropout_mask) {
      EXPECT_TRUE(m == 0.0 || std::abs(m - 1.0 / 0.7) < 1e-15);
      zeros += m == 0.0;
      sum += m;
      ++n;
    }
  }
  // 64000 Bernoulli draws: standard error of the drop rate is about 0.0018.
  EXPECT_NEAR(static_cast<double>(zeros) / n, 0.3, 0.01);
  EXPECT_NEAR(sum / n, 1.0, 0.015);
}

TEST(Loss, ClosedForms) {
  const ModelParams zero(5, 2, 2);
  EXPECT_NEAR(loss(0.5, 1, zero, 0.0), std::numbers::ln2, 1e-15);
  EXPECT_NEAR(loss(0.5, 0, zero, 0.0), std::numbers::ln2, 1e-15);
  // Scores are clamped to [1e-12, 1 - 1e-12] inside the log.
  EXPECT_NEAR(loss(1.0 - 1e-15, 1, zero, 0.0), 0.0, 2e-12);
  EXPECT_NEAR(loss(1e-15, 0, zero, 0.0), 0.0, 2e-12);
  // Clamped, never infinite.
  EXPECT_TRUE(std::isfinite(loss(0.0, 1, zero, 0.0)));
  ModelParams one(5, 2, 2);
  one.recurrent_weight(Gate::kCell, 1, 0) = 3.0;
  EXPECT_NEAR(loss(0.5, 1, one, 0.01), std::numbers::ln2 + 0.01 * 9.0, 1e-15);
  // Embeddings and biases are not penalised.
  ModelParams bias(5, 2, 2);
  bias.gate_bias()[0] = 5.0;
  bias.embedding_row(1)[0] = 5.0;
  EXPECT_EQ(l2_penalty(bias), 0.0);
  EXPECT_THROW(loss(1.5, 1, zero, 0.0), Error);
}

TEST(Backward, PaddingRowGradientIsZero) {
  const auto p = init_params({10, 3, 4, 0.0, 0, 2});
  const auto c = forward(p, seq({1, 2, 3, 10}, 10));
  const auto g = backward(p, c, 1);
  for (double x : g.embedding_row(0)) EXPECT_EQ(x, 0.0);
  for (double x : g.embedding_row(5)) EXPECT_EQ(x, 0.0);  // id 5 unused
}

TEST(Backward, MatchesFiniteDifferences) {
  // Full objective including the L2 term and a fixed dropout mask.
  Rng rng(17);
  for (int trial = 0; trial < 5; ++trial) {
    auto p = init_params({12, 3, 4, 0.0, 0, static_cast<std::uint64_t>(trial)});
    for (auto& x : p.data()) x += rng.uniform(-0.3, 0.3);
    for (auto& x : p.embedding_row(0)) x = 0.0;
    std::vector<std::uint32_t> ids;
    for (std::uint64_t t = 0, n = 1 + rng.uniform_below(5); t < n; ++t)
      ids.push_back(static_cast<std::uint32_t>(1 + rng.uniform_below(12)));
    std::vector<double> mask(4);
    for (auto& m : mask) m = rng.uniform01() < 0.25 ? 0.0 : 1.0 / 0.75;
    const int label = static_cast<int>(rng.uniform_below(2));
    const double lambda = 1e-3;

    auto grad = backward(p, forward_with_mask(p, ids, mask), label);
    for (std::size_t i = 0; i < p.size(); ++i)
      if (p.is_regularized(i)) grad.data()[i] += 2.0 * lambda * p.data()[i];

    for (std::size_t i = 0; i < p.size(); ++i) {
      const double saved = p.data()[i];
      p.data()[i] = saved + 1e-5;
      const double up = objective(p, ids, mask, label, lambda);
      p.data()[i] = saved - 1e-5;
      const double down = objective(p, ids, mask, label, lambda);
      p.data()[i] = saved;
      const double numeric = (up - down) / 2e-5;
      EXPECT_NEAR(grad.data()[i], numeric, 1e-8 + 1e-6 * std::abs(numeric)) << "index " << i;
    }
  }
}

TEST(Backward, AccumulateScales) {
  const auto p = init_params({10, 3, 4, 0.0, 0, 2});
  const auto c = forward(p, seq({4, 2}, 10));
  const auto g1 = backward(p, c, 0);
  Gradients g2(10, 3, 4);
  accumulate_gradients(p, c, 0, g2, 0.25);
  accumulate_gradients(p, c, 0, g2, 0.25);
  for (std::size_t i = 0; i < g1.size(); ++i) EXPECT_NEAR(g2.data()[i], 0.5 * g1.data()[i], 1e-15);
}

TEST(Predict, ThresholdRule) {
  // logistic(b) for a zero network equals logistic(output bias).
  ModelParams p(3, 2, 2);
  p.output_bias() = std::log(0.7 / 0.3);
  EXPECT_EQ(predict(p, seq({1}, 3)).label, 1);
  EXPECT_NEAR(predict(p, seq({1}, 3)).score, 0.7, 1e-15);
  p.output_bias() = std::log(0.3 / 0.7);
  EXPECT_EQ(predict(p, seq({1}, 3)).label, 0);
}
