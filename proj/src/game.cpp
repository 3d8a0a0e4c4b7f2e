#include "bellgame/game.hpp"

#include <cmath>

namespace bellgame {

double MultistageGame::joint_prior(Index type_idx) const {
  GameShape s = shape();
  std::vector<int> types(players());
  s.types_at(type_idx, types);
  double p = 1.0;
  for (int i = 0; i < players(); ++i) p *= prior[i][types[i]];
  return p;
}

std::vector<double> MultistageGame::joint_prior_table() const {
  Index t_space = shape().type_space();
  std::vector<double> out(t_space);
  for (Index t = 0; t < t_space; ++t) out[t] = joint_prior(t);
  return out;
}

std::vector<std::string> validate_game(const MultistageGame& game) {
  std::vector<std::string> out = validate_shape(game.shape());
  int n = game.players();
  if (static_cast<int>(game.prior.size()) != n)
    out.push_back("prior: " + std::to_string(game.prior.size()) + " rows, expected " +
                  std::to_string(n));
  if (static_cast<int>(game.payoffs.size()) != n)
    out.push_back("payoffs: " + std::to_string(game.payoffs.size()) + " tensors, expected " +
                  std::to_string(n));

  for (int i = 0; i < n && i < static_cast<int>(game.prior.size()); ++i) {
    if (static_cast<int>(game.prior[i].size()) != game.type_cards[i]) {
      out.push_back("prior of player " + std::to_string(i + 1) + " has " +
                    std::to_string(game.prior[i].size()) + " entries, expected " +
                    std::to_string(game.type_cards[i]));
      continue;
    }
    double sum = 0.0;
    for (double p : game.prior[i]) {
      if (p < 0.0) out.push_back("prior of player " + std::to_string(i + 1) + " has a negative entry");
      sum += p;
    }
    if (std::abs(sum - 1.0) > 1e-12)
      out.push_back("prior of player " + std::to_string(i + 1) + " is not normalized (sums to " +
                    std::to_string(sum) + ")");
  }

  Index cells = game.shape().cells();
  for (int i = 0; i < n && i < static_cast<int>(game.payoffs.size()); ++i) {
    if (static_cast<Index>(game.payoffs[i].size()) != cells)
      out.push_back("payoff tensor of player " + std::to_string(i + 1) + " has " +
                    std::to_string(game.payoffs[i].size()) + " entries, expected " +
                    std::to_string(cells));
  }
  return out;
}

Index BellFunctional::cells() const {
  Index c = 1;
  for (int t : type_cards) c *= t;
  for (int a : action_cards) c *= a;
  return c;
}

namespace {

void require_same_scenario(const std::vector<int>& lt, const std::vector<int>& la,
                           const std::vector<int>& rt, const std::vector<int>& ra,
                           const char* what) {
  auto fmt = [](const std::vector<int>& v) {
    std::string s = "[";
    for (std::size_t i = 0; i < v.size(); ++i) s += (i ? "," : "") + std::to_string(v[i]);
    return s + "]";
  };
  if (lt != rt || la != ra)
    throw ValidationError(std::string(what) + ": scenario mismatch, types " + fmt(lt) + " vs " +
                          fmt(rt) + ", actions " + fmt(la) + " vs " + fmt(ra));
}

}  // namespace

double expected_payoff(const MultistageGame& game, const ConditionalDistribution& dist,
                       int player) {
  require_same_scenario(game.type_cards, game.action_cards, dist.type_cards, dist.action_cards,
                        "expected_payoff");
  if (player < 0 || player >= game.players())
    throw ValidationError("expected_payoff: player index out of range");
  GameShape s = game.shape();
  Index a_space = s.action_space(), t_space = s.type_space();
  const auto& u = game.payoffs[player];
  double total = 0.0;
  for (Index t = 0; t < t_space; ++t) {
    double w = game.joint_prior(t);
    double row = 0.0;
    for (Index a = 0; a < a_space; ++a) row += dist.at(t, a) * u[t * a_space + a];
    total += w * row;
  }
  return total;
}

double functional_value(const BellFunctional& functional, const ConditionalDistribution& dist) {
  require_same_scenario(functional.type_cards, functional.action_cards, dist.type_cards,
                        dist.action_cards, "functional_value");
  Index t_space = dist.type_space(), a_space = dist.action_space();
  double total = 0.0;
  for (Index t = 0; t < t_space; ++t) {
    double row = 0.0;
    for (Index a = 0; a < a_space; ++a) row += dist.at(t, a) * functional.coefficients[t * a_space + a];
    total += row;
  }
  return total;
}

BellFunctional functional_from_game(const MultistageGame& game, int player) {
  if (player < 0 || player >= game.players())
    throw ValidationError("functional_from_game: player index out of range");
  GameShape s = game.shape();
  Index t_space = s.type_space(), a_space = s.action_space();
  BellFunctional f{game.type_cards, game.action_cards,
                   std::vector<double>(t_space * a_space), std::nullopt};
  const auto& u = game.payoffs[player];
  for (Index t = 0; t < t_space; ++t) {
    double w = game.joint_prior(t);
    for (Index a = 0; a < a_space; ++a) f.coefficients[t * a_space + a] = w * u[t * a_space + a];
  }
  return f;
}

MultistageGame game_from_functional(const BellFunctional& functional,
                                    std::vector<std::vector<double>> prior, Memory memory) {
  int n = static_cast<int>(functional.type_cards.size());
  if (static_cast<int>(prior.size()) != n)
    throw ValidationError("game_from_functional: prior has " + std::to_string(prior.size()) +
                          " rows, expected " + std::to_string(n));
  MultistageGame game{functional.type_cards, functional.action_cards, std::move(memory),
                      std::move(prior), {}};
  GameShape s = game.shape();
  Index t_space = s.type_space(), a_space = s.action_space();
  std::vector<double> u(t_space * a_space);
  for (Index t = 0; t < t_space; ++t) {
    double w = game.joint_prior(t);
    if (w <= 0.0)
      throw ValidationError("game_from_functional: joint prior vanishes at type " +
                            std::to_string(t) + ", payoff u = alpha / p(theta) is undefined");
    for (Index a = 0; a < a_space; ++a) u[t * a_space + a] = functional.coefficients[t * a_space + a] / w;
  }
  game.payoffs.assign(n, u);
  return game;
}

}  // namespace bellgame
