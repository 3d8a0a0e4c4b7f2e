#include "bellgame/shape.hpp"

#include <algorithm>
#include <cstdlib>
#include <thread>

namespace bellgame {

int thread_budget() {
  if (const char* env = std::getenv("BELLGAME_THREADS")) {
    int n = std::atoi(env);
    if (n >= 1) return n;
  }
  unsigned hw = std::thread::hardware_concurrency();
  return hw == 0 ? 1 : static_cast<int>(hw);
}

Index mixed_radix_index(std::span<const int> values, std::span<const int> radices) {
  Index idx = 0;
  for (std::size_t i = 0; i < radices.size(); ++i) idx = idx * radices[i] + values[i];
  return idx;
}

void mixed_radix_decode(Index index, std::span<const int> radices, std::span<int> values) {
  for (std::size_t i = radices.size(); i-- > 0;) {
    values[i] = static_cast<int>(index % radices[i]);
    index /= radices[i];
  }
}

Memory Memory::from_depths(const std::vector<int>& depths) {
  Memory m;
  m.windows.resize(depths.size());
  for (std::size_t i = 0; i < depths.size(); ++i) {
    for (int k = 1; k <= depths[i]; ++k) m.windows[i].push_back(static_cast<int>(i) - k);
  }
  return m;
}

Memory Memory::no_communication(int players) {
  Memory m;
  m.windows.resize(players);
  return m;
}

std::vector<int> Memory::depths() const {
  std::vector<int> d(windows.size());
  for (std::size_t i = 0; i < windows.size(); ++i) d[i] = static_cast<int>(windows[i].size());
  return d;
}

bool Memory::is_sliding() const {
  for (std::size_t i = 0; i < windows.size(); ++i) {
    for (std::size_t k = 0; k < windows[i].size(); ++k) {
      if (windows[i][k] != static_cast<int>(i) - 1 - static_cast<int>(k)) return false;
    }
  }
  return true;
}

Index GameShape::type_space() const {
  Index t = 1;
  for (int c : type_cards) t *= c;
  return t;
}

Index GameShape::action_space() const {
  Index a = 1;
  for (int c : action_cards) a *= c;
  return a;
}

Index GameShape::type_index(std::span<const int> types) const {
  return mixed_radix_index(types, type_cards);
}

Index GameShape::action_index(std::span<const int> actions) const {
  return mixed_radix_index(actions, action_cards);
}

void GameShape::types_at(Index index, std::span<int> out) const {
  mixed_radix_decode(index, type_cards, out);
}

void GameShape::actions_at(Index index, std::span<int> out) const {
  mixed_radix_decode(index, action_cards, out);
}

Index GameShape::history_card(int player) const {
  Index h = 1;
  for (int stage : memory.windows[player]) h *= action_cards[stage];
  return h;
}

Index GameShape::realized_history(int player, std::span<const int> actions) const {
  Index h = 0;
  for (int stage : memory.windows[player]) h = h * action_cards[stage] + actions[stage];
  return h;
}

std::vector<std::string> validate_shape(const GameShape& shape) {
  std::vector<std::string> out;
  int n = shape.players();
  if (n == 0) out.push_back("shape: no players");
  if (static_cast<int>(shape.action_cards.size()) != n)
    out.push_back("shape: action_cards has " + std::to_string(shape.action_cards.size()) +
                  " entries, expected " + std::to_string(n));
  if (shape.memory.players() != n)
    out.push_back("shape: memory has " + std::to_string(shape.memory.players()) +
                  " entries, expected " + std::to_string(n));
  for (int i = 0; i < n; ++i) {
    if (shape.type_cards[i] < 1)
      out.push_back("shape: type card of player " + std::to_string(i + 1) + " must be >= 1");
    if (i < static_cast<int>(shape.action_cards.size()) && shape.action_cards[i] < 1)
      out.push_back("shape: action card of player " + std::to_string(i + 1) + " must be >= 1");
  }
  for (int i = 0; i < std::min(n, shape.memory.players()); ++i) {
    const auto& w = shape.memory.windows[i];
    if (static_cast<int>(w.size()) > i)
      out.push_back("memory: m_" + std::to_string(i + 1) + " = " + std::to_string(w.size()) +
                    " > " + std::to_string(i) + " (a player can only observe earlier stages)");
    for (int stage : w) {
      if (stage < 0 || stage >= i)
        out.push_back("memory: window of player " + std::to_string(i + 1) +
                      " references stage " + std::to_string(stage + 1) +
                      ", which is not an earlier stage");
    }
    for (std::size_t a = 0; a < w.size(); ++a) {
      for (std::size_t b = a + 1; b < w.size(); ++b) {
        if (w[a] == w[b])
          out.push_back("memory: window of player " + std::to_string(i + 1) +
                        " lists stage " + std::to_string(w[a] + 1) + " twice");
      }
    }
  }
  return out;
}

}  // namespace bellgame
