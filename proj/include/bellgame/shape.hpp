#pragma once

#include <cstdint>
#include <span>
#include <vector>

#include "bellgame/common.hpp"

namespace bellgame {

using Index = std::int64_t;

// Mixed-radix encode/decode. values[0] is the most significant digit.
Index mixed_radix_index(std::span<const int> values, std::span<const int> radices);
void mixed_radix_decode(Index index, std::span<const int> radices, std::span<int> values);

// Which earlier stages each player observes before acting. windows[i] lists
// stage indices (0-based), most recent first. The common case is a sliding
// window of depth m_i, i.e. {i-1, ..., i-m_i}; general windows are allowed so
// that variants like "player 3 sees a_1 but not a_2" stay expressible.
struct Memory {
  std::vector<std::vector<int>> windows;

  static Memory from_depths(const std::vector<int>& depths);
  static Memory no_communication(int players);

  int players() const { return static_cast<int>(windows.size()); }
  // Window sizes; for sliding windows these are exactly the depths m_i.
  std::vector<int> depths() const;
  // True when every window is the sliding window {i-1, ..., i-m_i}.
  bool is_sliding() const;
  bool operator==(const Memory&) const = default;
};

// Cardinalities of a multistage scenario: per-player type and action counts
// plus the memory structure. Joint indices follow one fixed convention
// everywhere: types before actions, player 1 most significant, so a flat
// tensor cell is type_index * action_space() + action_index.
struct GameShape {
  std::vector<int> type_cards;
  std::vector<int> action_cards;
  Memory memory;

  int players() const { return static_cast<int>(type_cards.size()); }
  Index type_space() const;
  Index action_space() const;
  Index cells() const { return type_space() * action_space(); }

  Index type_index(std::span<const int> types) const;
  Index action_index(std::span<const int> actions) const;
  void types_at(Index index, std::span<int> out) const;
  void actions_at(Index index, std::span<int> out) const;
  Index cell(Index type_idx, Index action_idx) const { return type_idx * action_space() + action_idx; }

  // Number of distinct observable histories for one player.
  Index history_card(int player) const;
  // Settings enumerate (theta_i, history) pairs as theta_i * H_i + h.
  Index setting_card(int player) const { return type_cards[player] * history_card(player); }
  Index setting_index(int player, int type, Index history) const {
    return static_cast<Index>(type) * history_card(player) + history;
  }
  // History value realised by a full action profile, indexed in window order.
  Index realized_history(int player, std::span<const int> actions) const;

  bool operator==(const GameShape&) const = default;
};

// Structural checks shared by games, functionals and distributions. Returns
// human-readable diagnostics; empty means well-formed.
std::vector<std::string> validate_shape(const GameShape& shape);

}  // namespace bellgame
