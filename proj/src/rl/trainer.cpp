// SPDX-License-Identifier: Apache-2.0
#include "proofpilot/rl/trainer.hpp"

#include <algorithm>
#include <cmath>

#include "proofpilot/common/parallel.hpp"
#include "proofpilot/rl/sampling.hpp"

namespace proofpilot::rl {

void TrainerConfig::validate() const {
  auto require = [](bool ok, const char *msg) {
    if (!ok) throw std::invalid_argument(std::string("trainer config: ") + msg);
  };
  require(lambda >= 0.0, "lambda must be non-negative");
  require(temperature > 0.0, "temperature must be positive");
  require(temperature_decay > 0.0 && temperature_decay <= 1.0, "temperature_decay must lie in (0, 1]");
  require(adam.lr > 0.0 && adam.eps > 0.0, "adam lr and eps must be positive");
  require(adam.beta1 >= 0.0 && adam.beta1 < 1.0 && adam.beta2 >= 0.0 && adam.beta2 < 1.0,
          "adam betas must lie in [0, 1)");
  require(batch_size > 0, "batch_size must be positive");
  require(window > 0, "window must be positive");
  require(limits.max_steps > 0 && limits.max_seconds > 0.0 && limits.max_symbols > 0 && limits.max_term_depth > 0,
          "limits must be positive");
  require(jobs > 0, "jobs must be positive");
  vectorizer.validate();
  nn::NetworkConfig n = network;
  n.input_dim = vectorizer.dimension();
  n.validate();
}

void to_json(nlohmann::json &j, const TrainerConfig &c) {
  j = nlohmann::json{
      {"lambda", c.lambda},
      {"temperature", c.temperature},
      {"threshold", c.threshold},
      {"temperature_decay", c.temperature_decay},
      {"temperature_schedule", c.schedule == TemperatureSchedule::PerEpisode ? "per_episode" : "per_iteration"},
      {"adam",
       {{"lr", c.adam.lr},
        {"beta1", c.adam.beta1},
        {"beta2", c.adam.beta2},
        {"eps", c.adam.eps},
        {"weight_decay", c.adam.weight_decay}}},
      {"batch_size", c.batch_size},
      {"epochs", c.epochs},
      {"window", c.window},
      {"reward_normalization", normalization_name(c.normalization)},
      {"dropout_in_training", c.dropout_in_training},
      {"include_failed_episodes", c.include_failed_episodes},
      {"seed", c.seed},
      {"max_steps", c.limits.max_steps},
      {"max_seconds", c.limits.max_seconds},
      {"max_symbols", c.limits.max_symbols},
      {"max_term_depth", c.limits.max_term_depth},
      {"network", {{"units", c.network.units}, {"layers", c.network.layers}, {"dropout", c.network.dropout}}},
      {"vectorizer", c.vectorizer}};
}

void from_json(const nlohmann::json &j, TrainerConfig &c) {
  c.lambda = j.value("lambda", c.lambda);
  c.temperature = j.value("temperature", c.temperature);
  c.threshold = j.value("threshold", c.threshold);
  c.temperature_decay = j.value("temperature_decay", c.temperature_decay);
  if (j.contains("temperature_schedule")) {
    const auto s = j.at("temperature_schedule").get<std::string>();
    if (s == "per_episode") {
      c.schedule = TemperatureSchedule::PerEpisode;
    } else if (s == "per_iteration") {
      c.schedule = TemperatureSchedule::PerIteration;
    } else {
      throw std::invalid_argument("unknown temperature_schedule '" + s + "'");
    }
  }
  if (j.contains("adam")) {
    const auto &a = j.at("adam");
    c.adam.lr = a.value("lr", c.adam.lr);
    c.adam.beta1 = a.value("beta1", c.adam.beta1);
    c.adam.beta2 = a.value("beta2", c.adam.beta2);
    c.adam.eps = a.value("eps", c.adam.eps);
    c.adam.weight_decay = a.value("weight_decay", c.adam.weight_decay);
  }
  c.batch_size = j.value("batch_size", c.batch_size);
  c.epochs = j.value("epochs", c.epochs);
  c.window = j.value("window", c.window);
  if (j.contains("reward_normalization")) {
    c.normalization = parse_normalization(j.at("reward_normalization").get<std::string>());
  }
  c.dropout_in_training = j.value("dropout_in_training", c.dropout_in_training);
  c.include_failed_episodes = j.value("include_failed_episodes", c.include_failed_episodes);
  c.seed = j.value("seed", c.seed);
  c.limits.max_steps = j.value("max_steps", c.limits.max_steps);
  c.limits.max_seconds = j.value("max_seconds", c.limits.max_seconds);
  c.limits.max_symbols = j.value("max_symbols", c.limits.max_symbols);
  c.limits.max_term_depth = j.value("max_term_depth", c.limits.max_term_depth);
  if (j.contains("network")) {
    const auto &n = j.at("network");
    c.network.units = n.value("units", c.network.units);
    c.network.layers = n.value("layers", c.network.layers);
    c.network.dropout = n.value("dropout", c.network.dropout);
  }
  if (j.contains("vectorizer")) {
    nlohmann::json merged = c.vectorizer;
    merged.update(j.at("vectorizer"));
    c.vectorizer = merged.get<features::VectorizerConfig>();
  }
}

nlohmann::json stats_to_json(const IterationStats &s, bool timing) {
  nlohmann::json problems = nlohmann::json::array();
  for (const ProblemStats &p : s.problems) {
    nlohmann::json row{{"problem", p.problem},
                       {"outcome", engine::outcome_name(p.outcome)},
                       {"steps", p.steps},
                       {"proof_length", p.proof_length}};
    if (timing) row["seconds"] = p.seconds;
    problems.push_back(std::move(row));
  }
  return nlohmann::json{{"iteration", s.iteration},
                        {"temperature", s.temperature},
                        {"attempted", s.attempted},
                        {"solved", s.solved},
                        {"mean_proof_steps", s.mean_proof_steps},
                        {"median_proof_steps", s.median_proof_steps},
                        {"mean_proof_length", s.mean_proof_length},
                        {"mean_loss", s.mean_loss},
                        {"updates", s.updates},
                        {"examples_added", s.examples_added},
                        {"buffer_size", s.buffer_size},
                        {"problems", std::move(problems)}};
}

Trainer::Trainer(TrainerConfig config, std::vector<fol::Problem> corpus)
    : config_(std::move(config)), corpus_(std::move(corpus)), buffer_(config_.window) {
  config_.validate();
  if (corpus_.empty()) throw std::invalid_argument("trainer: empty corpus");
  config_.network.input_dim = config_.vectorizer.dimension();
  params_ = std::make_shared<nn::PolicyParameters>(
      nn::PolicyParameters::initialized(config_.network, derive_seed(config_.seed, {kInitStream})));
  params_->set_seed(config_.seed);

  if (config_.normalization == RewardNormalization::BaselineSteps) {
    std::vector<double> steps(corpus_.size());
    parallel_for(corpus_.size(), config_.jobs, [&](std::size_t i) {
      engine::AgeWeightPolicy baseline;
      Rng rng(0);
      const auto r = engine::run_episode(corpus_[i], baseline, config_.limits, rng);
      steps[i] = r.solved() ? static_cast<double>(r.steps.size()) : static_cast<double>(config_.limits.max_steps);
    });
    for (std::size_t i = 0; i < corpus_.size(); ++i) norm_.baseline_steps[corpus_[i].name] = std::max(1.0, steps[i]);
  }
}

double Trainer::temperature_for(std::size_t problem_index) const {
  const std::uint64_t elapsed = config_.schedule == TemperatureSchedule::PerEpisode
                                    ? episodes_ + problem_index
                                    : iteration_;
  return annealed_temperature(config_.temperature, config_.temperature_decay, elapsed);
}

IterationStats Trainer::run_iteration() {
  const std::size_t k = ++iteration_;
  IterationStats stats;
  stats.iteration = k;
  stats.temperature = temperature_for(0);
  stats.attempted = corpus_.size();

  struct Rollout {
    engine::EpisodeResult episode;
    std::shared_ptr<const nn::FeatureTable> features;
  };
  std::vector<Rollout> rollouts(corpus_.size());
  std::shared_ptr<const nn::PolicyParameters> frozen = params_;
  parallel_for(corpus_.size(), config_.jobs, [&](std::size_t i) {
    NeuralPolicy policy(frozen, config_.vectorizer, SamplingConfig{temperature_for(i), config_.threshold});
    Rng rng(derive_seed(config_.seed, {kRolloutStream, k, i}));
    rollouts[i].episode = engine::run_episode(corpus_[i], policy, config_.limits, rng);
    rollouts[i].episode.engine.reset();
    rollouts[i].features = policy.features();
  });
  episodes_ += corpus_.size();

  std::vector<TrainingExample> fresh;
  std::vector<double> solved_steps;
  double proof_length_sum = 0.0;
  for (Rollout &r : rollouts) {
    const engine::EpisodeResult &ep = r.episode;
    stats.problems.push_back(ProblemStats{ep.problem, ep.outcome, ep.steps.size(), ep.proof.size(), ep.seconds});
    if (ep.solved()) {
      ++stats.solved;
      solved_steps.push_back(static_cast<double>(ep.steps.size()));
      proof_length_sum += static_cast<double>(ep.proof.size());
    }
    if (!ep.solved() && !config_.include_failed_episodes) continue;
    std::vector<TrainingExample> ex = assign_rewards(ep, r.features, k);
    if (config_.normalization == RewardNormalization::RelativeBest && ep.solved()) {
      double best = 0.0;
      for (const auto &e : ex) best = std::max(best, e.reward);
      double &record = norm_.best_reward[ep.problem];
      record = std::max(record, best);
    }
    normalize_rewards(ex, config_.normalization, norm_);
    std::move(ex.begin(), ex.end(), std::back_inserter(fresh));
  }
  if (!solved_steps.empty()) {
    const double n = static_cast<double>(solved_steps.size());
    double sum = 0.0;
    for (double s : solved_steps) sum += s;
    stats.mean_proof_steps = sum / n;
    stats.mean_proof_length = proof_length_sum / n;
    std::sort(solved_steps.begin(), solved_steps.end());
    const std::size_t mid = solved_steps.size() / 2;
    stats.median_proof_steps =
        solved_steps.size() % 2 ? solved_steps[mid] : 0.5 * (solved_steps[mid - 1] + solved_steps[mid]);
  }
  stats.examples_added = fresh.size();
  buffer_.add(k, std::move(fresh));
  stats.buffer_size = buffer_.size();

  std::vector<const TrainingExample *> order = buffer_.all();
  if (!order.empty()) {
    Rng rng(derive_seed(config_.seed, {kTrainStream, k}));
    const nn::Mode mode = config_.dropout_in_training ? nn::Mode::Train : nn::Mode::Eval;
    auto next = std::make_shared<nn::PolicyParameters>(*params_);
    double loss_sum = 0.0;
    for (std::size_t epoch = 0; epoch < config_.epochs; ++epoch) {
      shuffle(order.begin(), order.end(), rng);
      for (std::size_t start = 0; start < order.size(); start += config_.batch_size) {
        const std::size_t end = std::min(order.size(), start + config_.batch_size);
        std::span<const TrainingExample *const> batch(order.data() + start, end - start);
        LossResult lr = compute_loss(batch, *next, config_.lambda, mode, &rng);
        adam_step(next->values(), lr.grad, adam_, config_.adam);
        loss_sum += lr.loss;
        ++stats.updates;
      }
    }
    params_ = std::move(next);
    if (stats.updates > 0) stats.mean_loss = loss_sum / static_cast<double>(stats.updates);
  }
  return stats;
}

}  // namespace proofpilot::rl
