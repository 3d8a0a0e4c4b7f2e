#include "bellgame/nonsignaling.hpp"

#include <cmath>

namespace bellgame {

namespace {

Index product(const std::vector<int>& cards) {
  Index p = 1;
  for (int c : cards) p *= c;
  return p;
}

}  // namespace

Index AugmentedBox::input_space() const { return product(input_cards); }
Index AugmentedBox::output_space() const { return product(output_cards); }

double AugmentedBox::at(Index input_idx, Index output_idx) const {
  double v = table[input_idx * output_space() + output_idx];
  return v < 0.0 ? 0.0 : v;
}

std::vector<std::string> validate_box(const AugmentedBox& box, double tol) {
  std::vector<std::string> out;
  int n = static_cast<int>(box.input_cards.size());
  if (box.output_cards.size() != box.input_cards.size()) {
    out.push_back("box: input/output player counts differ");
    return out;
  }
  Index in_space = box.input_space(), out_space = box.output_space();
  if (static_cast<Index>(box.table.size()) != in_space * out_space) {
    out.push_back("box: table has " + std::to_string(box.table.size()) + " entries, expected " +
                  std::to_string(in_space * out_space));
    return out;
  }
  for (Index x = 0; x < in_space; ++x) {
    double sum = 0.0;
    for (Index a = 0; a < out_space; ++a) {
      double v = box.table[x * out_space + a];
      if (v < -1e-12)
        out.push_back("box: negative entry at input " + std::to_string(x) + ", output " +
                      std::to_string(a));
      sum += v;
    }
    if (std::abs(sum - 1.0) > tol)
      out.push_back("box: row for input " + std::to_string(x) + " sums to " + std::to_string(sum));
  }

  // Full no-signaling: for every proper subset of players, the marginal over
  // their outputs is independent of their inputs.
  std::vector<int> in_digits(n), out_digits(n);
  for (int mask = 1; mask < (1 << n) - 1; ++mask) {
    std::vector<int> kept_in_cards, kept_out_cards, sub_in_cards, sub_out_cards;
    for (int i = 0; i < n; ++i) {
      if (mask & (1 << i)) {
        sub_in_cards.push_back(box.input_cards[i]);
        sub_out_cards.push_back(box.output_cards[i]);
      } else {
        kept_in_cards.push_back(box.input_cards[i]);
        kept_out_cards.push_back(box.output_cards[i]);
      }
    }
    Index kept_in = product(kept_in_cards), kept_out = product(kept_out_cards);
    Index sub_in = product(sub_in_cards), sub_out = product(sub_out_cards);
    std::vector<int> ki(kept_in_cards.size()), ko(kept_out_cards.size());
    std::vector<int> si(sub_in_cards.size()), so(sub_out_cards.size());
    for (Index kix = 0; kix < kept_in; ++kix) {
      mixed_radix_decode(kix, kept_in_cards, ki);
      for (Index kox = 0; kox < kept_out; ++kox) {
        mixed_radix_decode(kox, kept_out_cards, ko);
        double ref = 0.0;
        for (Index six = 0; six < sub_in; ++six) {
          mixed_radix_decode(six, sub_in_cards, si);
          double marginal = 0.0;
          for (Index sox = 0; sox < sub_out; ++sox) {
            mixed_radix_decode(sox, sub_out_cards, so);
            int k = 0, s = 0;
            for (int i = 0; i < n; ++i) {
              if (mask & (1 << i)) {
                in_digits[i] = si[s];
                out_digits[i] = so[s];
                ++s;
              } else {
                in_digits[i] = ki[k];
                out_digits[i] = ko[k];
                ++k;
              }
            }
            marginal += box.table[mixed_radix_index(in_digits, box.input_cards) * out_space +
                                  mixed_radix_index(out_digits, box.output_cards)];
          }
          if (six == 0) {
            ref = marginal;
          } else if (std::abs(marginal - ref) > tol) {
            out.push_back("box: signaling marginal for player subset mask " +
                          std::to_string(mask));
            six = sub_in;  // one diagnostic per subset is enough
          }
        }
      }
    }
  }
  return out;
}

double algebraic_max(const BellFunctional& functional) {
  GameShape shape = functional.shape_with(Memory::no_communication(
      static_cast<int>(functional.type_cards.size())));
  Index t_space = shape.type_space(), a_space = shape.action_space();
  if (static_cast<Index>(functional.coefficients.size()) != t_space * a_space)
    throw ValidationError("algebraic_max: coefficient tensor size mismatch");
  double total = 0.0;
  for (Index t = 0; t < t_space; ++t) {
    double best = functional.coefficients[t * a_space];
    for (Index a = 1; a < a_space; ++a)
      best = std::max(best, functional.coefficients[t * a_space + a]);
    total += best;
  }
  return total;
}

NsBoundResult ns_bound(const BellFunctional& functional, const Memory& memory,
                       const NsBoundOptions& opts) {
  GameShape shape = functional.shape_with(memory);
  auto diagnostics = validate_shape(shape);
  if (!diagnostics.empty()) throw ValidationError("ns_bound: " + diagnostics.front());
  int n = shape.players();
  std::vector<int> input_cards(n);
  for (int i = 0; i < n; ++i) input_cards[i] = static_cast<int>(shape.setting_card(i));
  Index in_space = product(input_cards);
  Index out_space = shape.action_space();
  Index vars = in_space * out_space;
  if (vars > opts.variable_guard)
    throw SizeGuardError("ns_bound: linear program with " + std::to_string(vars) +
                         " variables exceeds the guard of " +
                         std::to_string(opts.variable_guard));

  LinearProgram lp;
  lp.vars = vars;
  lp.objective.assign(vars, 0.0);

  // The functional reads exactly the cells whose history inputs match the
  // realised outputs, which is where the communication structure lives.
  Index t_space = shape.type_space();
  std::vector<int> types(n), actions(n), inputs(n);
  for (Index t = 0; t < t_space; ++t) {
    shape.types_at(t, types);
    for (Index a = 0; a < out_space; ++a) {
      shape.actions_at(a, actions);
      for (int i = 0; i < n; ++i)
        inputs[i] = static_cast<int>(
            shape.setting_index(i, types[i], shape.realized_history(i, actions)));
      lp.objective[mixed_radix_index(inputs, input_cards) * out_space + a] +=
          functional.coefficients[t * out_space + a];
    }
  }

  // Normalisation per joint input.
  for (Index x = 0; x < in_space; ++x) {
    std::vector<double> row(vars, 0.0);
    for (Index a = 0; a < out_space; ++a) row[x * out_space + a] = 1.0;
    lp.rows.push_back(std::move(row));
    lp.rhs.push_back(1.0);
  }

  // Single-player marginal equalities against input 0 of that player. These
  // generate the full set of subset no-signaling constraints.
  for (int i = 0; i < n; ++i) {
    std::vector<int> rest_in_cards, rest_out_cards;
    for (int j = 0; j < n; ++j) {
      if (j == i) continue;
      rest_in_cards.push_back(input_cards[j]);
      rest_out_cards.push_back(shape.action_cards[j]);
    }
    Index rest_in = product(rest_in_cards), rest_out = product(rest_out_cards);
    std::vector<int> ri(rest_in_cards.size()), ro(rest_out_cards.size());
    std::vector<int> in_digits(n), out_digits(n);
    for (Index rix = 0; rix < rest_in; ++rix) {
      mixed_radix_decode(rix, rest_in_cards, ri);
      for (Index rox = 0; rox < rest_out; ++rox) {
        mixed_radix_decode(rox, rest_out_cards, ro);
        for (int xi = 1; xi < input_cards[i]; ++xi) {
          std::vector<double> row(vars, 0.0);
          for (int ai = 0; ai < shape.action_cards[i]; ++ai) {
            int k = 0;
            for (int j = 0; j < n; ++j) {
              if (j == i) continue;
              in_digits[j] = ri[k];
              out_digits[j] = ro[k];
              ++k;
            }
            out_digits[i] = ai;
            Index out_idx = mixed_radix_index(out_digits, shape.action_cards);
            in_digits[i] = xi;
            row[mixed_radix_index(in_digits, input_cards) * out_space + out_idx] += 1.0;
            in_digits[i] = 0;
            row[mixed_radix_index(in_digits, input_cards) * out_space + out_idx] -= 1.0;
          }
          lp.rows.push_back(std::move(row));
          lp.rhs.push_back(0.0);
        }
      }
    }
  }

  LpResult sol = solve_lp(lp);
  if (sol.status != LpResult::Status::Optimal)
    throw std::runtime_error("ns_bound: no-signaling polytope solve failed unexpectedly");

  NsBoundResult result;
  result.value = sol.objective;
  result.optimizer = AugmentedBox{input_cards, shape.action_cards, std::move(sol.solution)};
  return result;
}

ConditionalDistribution wire_box(const AugmentedBox& box, const Wiring& wiring) {
  if (box.input_cards.size() != 2)
    throw ValidationError("wire_box: expected a bipartite box");
  auto box_diag = validate_box(box);
  if (!box_diag.empty()) throw ValidationError("wire_box: " + box_diag.front());
  if (static_cast<int>(wiring.map.size()) != wiring.receiver_types * wiring.sender_outputs)
    throw ValidationError("wire_box: wiring map has " + std::to_string(wiring.map.size()) +
                          " entries, expected " +
                          std::to_string(wiring.receiver_types * wiring.sender_outputs));
  if (wiring.sender_outputs != box.output_cards[0])
    throw ValidationError("wire_box: wiring reads " + std::to_string(wiring.sender_outputs) +
                          " sender outputs, box produces " + std::to_string(box.output_cards[0]));
  for (int v : wiring.map)
    if (v < 0 || v >= box.input_cards[1])
      throw ValidationError("wire_box: wiring targets input " + std::to_string(v) +
                            " outside the box's second input range");

  int t1 = box.input_cards[0], t2 = wiring.receiver_types;
  int a1 = box.output_cards[0], a2 = box.output_cards[1];
  std::vector<double> table(static_cast<std::size_t>(t1) * t2 * a1 * a2);
  for (int x1 = 0; x1 < t1; ++x1) {
    for (int y = 0; y < t2; ++y) {
      double row_sum = 0.0;
      for (int o1 = 0; o1 < a1; ++o1) {
        int x2 = wiring.map[y * a1 + o1];
        for (int o2 = 0; o2 < a2; ++o2) {
          double p = box.at(x1 * box.input_cards[1] + x2, o1 * a2 + o2);
          table[((static_cast<Index>(x1) * t2 + y) * a1 + o1) * a2 + o2] = p;
          row_sum += p;
        }
      }
      // No-signaling of the box guarantees this, up to arithmetic noise.
      if (std::abs(row_sum - 1.0) > 1e-9)
        throw ValidationError("wire_box: wired row sums to " + std::to_string(row_sum));
    }
  }
  return ConditionalDistribution::from_table({t1, t2}, {a1, a2}, std::move(table));
}

}  // namespace bellgame
