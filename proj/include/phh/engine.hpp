#pragma once

#include <algorithm>
#include <optional>
#include <string>
#include <vector>

#include "phh/document.hpp"
#include "phh/eval.hpp"

namespace phh {

enum class PlayerStatus { Active, Folded, AllIn, Mucked, Shown };
enum class Phase { Dealing, Betting, Drawing, Showdown, Done };

inline const char* to_string(Phase p) {
  switch (p) {
    case Phase::Dealing: return "dealing";
    case Phase::Betting: return "betting";
    case Phase::Drawing: return "drawing";
    case Phase::Showdown: return "showdown";
    case Phase::Done: return "done";
  }
  return "";
}

namespace engine_detail {

enum class Sizing { Fixed, NoLimit, PotLimit };

struct StreetDef {
  int hole_down = 0;
  int hole_up = 0;
  int board_cards = 0;
  bool draw = false;
  bool big_tier = false;
};

struct VariantPlan {
  std::vector<StreetDef> streets;
  bool button = true;
  bool stud = false;
  bool razz = false;  // lowest showing opens, highest card brings in
  Sizing sizing = Sizing::Fixed;
  int hole_size = 2;
};

inline VariantPlan plan_for(VariantCode code) {
  VariantPlan p;
  auto holdem = [&](int hole, Sizing sizing) {
    p.streets = {{hole, 0, 0, false, false},
                 {0, 0, 3, false, false},
                 {0, 0, 1, false, true},
                 {0, 0, 1, false, true}};
    p.sizing = sizing;
    p.hole_size = hole;
  };
  switch (code) {
    case VariantCode::FT: holdem(2, Sizing::Fixed); break;
    case VariantCode::NT: holdem(2, Sizing::NoLimit); break;
    case VariantCode::NS: holdem(2, Sizing::NoLimit); break;
    case VariantCode::PO: holdem(4, Sizing::PotLimit); break;
    case VariantCode::FO8: holdem(4, Sizing::Fixed); break;
    case VariantCode::F7S:
    case VariantCode::F7S8:
    case VariantCode::FR:
      p.streets = {{2, 1, 0, false, false},
                   {0, 1, 0, false, false},
                   {0, 1, 0, false, true},
                   {0, 1, 0, false, true},
                   {1, 0, 0, false, true}};
      p.button = false;
      p.stud = true;
      p.razz = code == VariantCode::FR;
      p.hole_size = 7;
      break;
    case VariantCode::N2L1D:
      p.streets = {{5, 0, 0, false, false}, {0, 0, 0, true, false}};
      p.sizing = Sizing::NoLimit;
      p.hole_size = 5;
      break;
    case VariantCode::F2L3D:
      p.streets = {{5, 0, 0, false, false},
                   {0, 0, 0, true, false},
                   {0, 0, 0, true, true},
                   {0, 0, 0, true, true}};
      p.hole_size = 5;
      break;
    case VariantCode::FB:
      p.streets = {{4, 0, 0, false, false},
                   {0, 0, 0, true, false},
                   {0, 0, 0, true, true},
                   {0, 0, 0, true, true}};
      p.hole_size = 4;
      break;
  }
  return p;
}

}  // namespace engine_detail

// One step of a replay, exported with stable field names (schema v1).
struct Snapshot {
  int step = 0;
  int street = 0;
  Phase phase = Phase::Dealing;
  std::optional<PlayerIndex> turn;
  bool terminal = false;
  std::vector<std::optional<Money>> stacks;
  std::vector<Money> committed;  // per player, current betting round
  Money pot;                     // collected chips from closed rounds + antes
  std::vector<Card> board;
};

inline std::string snapshot_to_json(const Snapshot& s) {
  std::string out = "{\"v\":1,\"step\":" + std::to_string(s.step);
  out += ",\"street\":" + std::to_string(s.street);
  out += ",\"phase\":\"" + std::string(to_string(s.phase)) + "\"";
  out += ",\"turn\":";
  out += s.turn ? std::to_string(*s.turn) : "null";
  out += ",\"terminal\":";
  out += s.terminal ? "true" : "false";
  out += ",\"pot\":\"" + s.pot.to_string() + "\"";
  out += ",\"stacks\":[";
  for (std::size_t i = 0; i < s.stacks.size(); ++i) {
    if (i) out += ',';
    out += s.stacks[i] ? "\"" + s.stacks[i]->to_string() + "\"" : "null";
  }
  out += "],\"committed\":[";
  for (std::size_t i = 0; i < s.committed.size(); ++i) {
    if (i) out += ',';
    out += "\"" + s.committed[i].to_string() + "\"";
  }
  out += "],\"board\":\"" + serialize_cards(s.board) + "\"}";
  return out;
}

struct ApplyResult {
  std::vector<Diagnostic> diagnostics;
  bool applied = true;
};

// Replays a hand from its initial state, enforcing turn and amount legality
// at the configured strictness, and settles pots (side pots, split pots,
// odd chips) once the hand is over. All chip arithmetic is integral at the
// document's decimal granularity.
class GameState {
 public:
  static Expected<GameState, Diagnostic> initial(
      const HandDocument& doc, Strictness strictness,
      std::vector<Diagnostic>& warnings) {
    if (!doc.variant.code)
      return Diagnostic{Severity::Error, "UnsupportedVariant", "variant",
                        "cannot replay unrecognized variant '" +
                            doc.variant.text + "'"};
    GameState g;
    g.strictness_ = strictness;
    g.variant_ = *doc.variant.code;
    g.plan_ = engine_detail::plan_for(g.variant_);
    g.n_ = doc.player_count();
    if (g.n_ < 2)
      return Diagnostic{Severity::Error, "BadPlayerCount", "starting_stacks",
                        "replay needs at least two players"};

    // Decimal granularity: the finest scale used anywhere in the document.
    int scale = 0;
    auto see = [&scale](const Money& m) { scale = std::max(scale, m.scale()); };
    for (const auto& m : doc.antes) see(m);
    if (doc.blinds_or_straddles)
      for (const auto& m : *doc.blinds_or_straddles) see(m);
    for (const auto& m : doc.starting_stacks)
      if (m) see(*m);
    if (doc.bring_in) see(*doc.bring_in);
    if (doc.small_bet) see(*doc.small_bet);
    if (doc.big_bet) see(*doc.big_bet);
    if (doc.min_bet) see(*doc.min_bet);
    for (const auto& a : doc.actions)
      if (const auto* cbr = a.as<ActionRecord::CompleteBetRaiseTo>())
        see(cbr->amount);
    g.scale_ = scale;

    auto atoms = [&](const Money& m) -> std::optional<std::int64_t> {
      return m.units_at_scale(g.scale_);
    };
    auto required_atoms = [&](const std::optional<Money>& m) {
      return m ? atoms(*m) : std::optional<std::int64_t>(0);
    };

    auto bring = required_atoms(doc.bring_in);
    auto small = required_atoms(doc.small_bet);
    auto big = required_atoms(doc.big_bet);
    auto min = required_atoms(doc.min_bet);
    if (!bring || !small || !big || !min)
      return Diagnostic{Severity::Error, "AmountOverflow", "",
                        "stake amounts exceed the representable range"};
    g.bring_in_ = *bring;
    g.small_bet_ = *small;
    g.big_bet_ = *big;
    g.min_bet_ = *min;
    if (g.plan_.sizing != engine_detail::Sizing::Fixed && g.min_bet_ == 0)
      g.min_bet_ = 1;  // degenerate documents; keep raise math sane

    g.stacks_.assign(g.n_, 0);
    g.stack_known_.assign(g.n_, false);
    __int128 total = 0;
    for (int i = 0; i < g.n_; ++i) {
      if (!doc.starting_stacks[i]) continue;
      auto v = atoms(*doc.starting_stacks[i]);
      if (!v)
        return Diagnostic{Severity::Error, "AmountOverflow",
                          "starting_stacks",
                          "stack exceeds the representable range"};
      g.stacks_[i] = *v;
      g.stack_known_[i] = true;
      total += *v;
    }
    if (total > INT64_MAX)
      return Diagnostic{Severity::Error, "AmountOverflow", "starting_stacks",
                        "total chips exceed the representable range"};

    g.start_stacks_known_ = g.stacks_;
    g.status_.assign(g.n_, PlayerStatus::Active);
    g.street_bet_.assign(g.n_, 0);
    g.total_committed_.assign(g.n_, 0);
    g.ante_committed_.assign(g.n_, 0);
    g.hole_.assign(g.n_, {});
    g.hole_up_.assign(g.n_, {});
    g.pending_draw_.assign(g.n_, 0);
    g.drew_.assign(g.n_, false);
    g.disclosed_.assign(g.n_, false);
    g.acted_.assign(g.n_, false);
    g.raise_barred_.assign(g.n_, false);
    g.hole_dealt_street_.assign(g.n_, 0);

    // Effective forced posts. Heads-up button games reverse the ante and
    // blind arrays: the first player is the big blind, the last has the
    // button, and the arrays are written small-blind first.
    bool reversed = g.plan_.button && g.n_ == 2;
    auto effective = [&](const std::vector<Money>& src, int i,
                         std::optional<std::int64_t>& out) {
      int idx = reversed ? g.n_ - 1 - i : i;
      if (idx >= static_cast<int>(src.size())) {
        out = 0;
        return;
      }
      out = atoms(src[idx]);
    };

    auto post = [&](int i, std::int64_t amount, bool is_ante,
                    const char* what) -> std::optional<Diagnostic> {
      if (amount <= 0) return std::nullopt;
      std::int64_t pay = amount;
      if (g.stack_known_[i] && pay > g.stacks_[i]) {
        if (strictness == Strictness::Strict)
          return Diagnostic{Severity::Error, "StakesExceedStack",
                            std::string(what),
                            "p" + std::to_string(i + 1) +
                                " cannot cover the forced post"};
        if (strictness == Strictness::Warn)
          add_diag(warnings, Severity::Warning, "StakesExceedStack",
                   std::string(what),
                   "p" + std::to_string(i + 1) + " posts all-in");
        pay = g.stacks_[i];
      }
      if (g.stack_known_[i]) {
        g.stacks_[i] -= pay;
        if (g.stacks_[i] == 0) g.status_[i] = PlayerStatus::AllIn;
      }
      g.total_committed_[i] += pay;
      if (is_ante)
        g.ante_committed_[i] += pay;
      else
        g.street_bet_[i] += pay;
      return std::nullopt;
    };

    for (int i = 0; i < g.n_; ++i) {
      std::optional<std::int64_t> ante;
      effective(doc.antes, i, ante);
      if (!ante)
        return Diagnostic{Severity::Error, "AmountOverflow", "antes",
                          "ante exceeds the representable range"};
      if (auto err = post(i, *ante, true, "antes")) return *err;
    }
    if (g.plan_.button && doc.blinds_or_straddles) {
      for (int i = 0; i < g.n_; ++i) {
        std::optional<std::int64_t> blind;
        effective(*doc.blinds_or_straddles, i, blind);
        if (!blind)
          return Diagnostic{Severity::Error, "AmountOverflow",
                            "blinds_or_straddles",
                            "blind exceeds the representable range"};
        g.forced_bets_.push_back(*blind);
        if (auto err = post(i, *blind, false, "blinds_or_straddles"))
          return *err;
      }
    } else {
      g.forced_bets_.assign(g.n_, 0);
    }

    g.current_max_ = 0;
    for (int i = 0; i < g.n_; ++i)
      g.current_max_ = std::max(g.current_max_, g.street_bet_[i]);
    g.last_raise_size_ = g.street_tier(0);
    if (g.plan_.sizing != engine_detail::Sizing::Fixed) {
      std::int64_t prev = 0;
      for (std::int64_t b : g.forced_bets_) {
        if (b > prev) {
          g.last_raise_size_ = std::max(g.last_raise_size_, b - prev);
          prev = b;
        }
      }
      g.last_raise_size_ = std::max(g.last_raise_size_, g.min_bet_);
    }
    g.bring_in_pending_ = g.plan_.stud;
    return g;
  }

  ApplyResult apply(const ActionRecord& rec, const std::string& location = "action") {
    ApplyResult r;
    if (rec.is_noop()) return r;
    if (terminal_) {
      add_diag(r.diagnostics, Severity::Error, "ActionAfterTerminal", location,
               "the hand is already over");
      r.applied = false;
      return r;
    }
    std::visit(
        [&](const auto& body) {
          using B = std::decay_t<decltype(body)>;
          if constexpr (std::is_same_v<B, ActionRecord::DealBoard>)
            do_deal_board(body, location, r);
          else if constexpr (std::is_same_v<B, ActionRecord::DealHole>)
            do_deal_hole(body, location, r);
          else if constexpr (std::is_same_v<B, ActionRecord::PostBringIn>)
            do_bring_in(body, location, r);
          else if constexpr (std::is_same_v<B, ActionRecord::CompleteBetRaiseTo>)
            do_cbr(body, location, r);
          else if constexpr (std::is_same_v<B, ActionRecord::CheckCall>)
            do_check_call(body, location, r);
          else if constexpr (std::is_same_v<B, ActionRecord::Fold>)
            do_fold(body, location, r);
          else if constexpr (std::is_same_v<B, ActionRecord::StandPatDiscard>)
            do_draw(body, location, r);
          else if constexpr (std::is_same_v<B, ActionRecord::ShowMuck>)
            do_show_muck(body, location, r);
        },
        rec.body);
    return r;
  }

  // --- queries ---

  int player_count() const { return n_; }
  int granularity_scale() const { return scale_; }
  Phase phase() const { return phase_; }
  int street() const { return street_; }
  bool terminal() const { return terminal_; }
  VariantCode variant() const { return variant_; }

  std::optional<PlayerIndex> turn() const {
    if (!turn_) return std::nullopt;
    return *turn_ + 1;
  }

  PlayerStatus status(PlayerIndex p) const { return status_[p - 1]; }
  const std::vector<Card>& hole(PlayerIndex p) const { return hole_[p - 1]; }
  const std::vector<bool>& hole_up(PlayerIndex p) const { return hole_up_[p - 1]; }
  const std::vector<Card>& board() const { return board_; }
  int pending_draw(PlayerIndex p) const { return pending_draw_[p - 1]; }
  bool disclosed(PlayerIndex p) const { return disclosed_[p - 1]; }

  // Optional fixed-limit raise cap per street (0 = unlimited, the default;
  // cap conventions vary by room so replay does not enforce one).
  void set_fixed_limit_raise_cap(int bets) { raise_cap_ = bets; }

  // Cards still owed to a player right now: this street's remaining deal
  // during the dealing phase, or draw replacements during a draw round.
  int hole_cards_due(PlayerIndex p) const {
    int i = p - 1;
    if (!in_hand(i)) return 0;
    if (phase_ == Phase::Drawing) return pending_draw_[i];
    if (phase_ != Phase::Dealing) return 0;
    return std::max(0, def().hole_down + def().hole_up - hole_dealt_street_[i]);
  }

  int board_cards_due() const {
    if (phase_ != Phase::Dealing) return 0;
    return std::max(0, def().board_cards - board_dealt_street_);
  }

  std::optional<Money> stack(PlayerIndex p) const {
    if (!stack_known_[p - 1]) return std::nullopt;
    return money(stacks_[p - 1]);
  }
  Money committed(PlayerIndex p) const { return money(street_bet_[p - 1]); }
  Money total_committed(PlayerIndex p) const {
    return money(total_committed_[p - 1]);
  }
  Money current_max() const { return money(current_max_); }

  Money to_call(PlayerIndex p) const {
    return money(std::max<std::int64_t>(0, current_max_ - street_bet_[p - 1]));
  }

  // Legal minimum "to" amount for a bet or raise by the turn player.
  Money min_cbr_to() const { return money(min_raise_to()); }

  // Pot-limit cap for the turn player; nullopt when unbounded.
  std::optional<Money> max_cbr_to() const {
    if (plan_.sizing != engine_detail::Sizing::PotLimit || !turn_)
      return std::nullopt;
    return money(pot_limit_cap(*turn_));
  }

  Money pot_total() const {
    __int128 collected = 0;
    for (int i = 0; i < n_; ++i)
      collected += total_committed_[i] - street_bet_[i];
    if (collected > INT64_MAX) collected = INT64_MAX;
    return money(static_cast<std::int64_t>(collected));
  }

  // Layered pots over every chip contributed so far (antes included).
  // Eligibility reflects the current fold/muck statuses.
  std::vector<std::pair<Money, std::vector<PlayerIndex>>> pots() const {
    std::vector<std::pair<Money, std::vector<PlayerIndex>>> out;
    std::vector<std::int64_t> collected(n_);
    for (int i = 0; i < n_; ++i)
      collected[i] = total_committed_[i] - street_bet_[i];
    std::vector<std::int64_t> levels;
    for (int i = 0; i < n_; ++i)
      if (collected[i] > 0) levels.push_back(collected[i]);
    std::sort(levels.begin(), levels.end());
    levels.erase(std::unique(levels.begin(), levels.end()), levels.end());
    std::int64_t prev = 0;
    for (std::int64_t level : levels) {
      __int128 amount = 0;
      std::vector<PlayerIndex> eligible;
      for (int i = 0; i < n_; ++i) {
        amount += std::max<std::int64_t>(
            0, std::min(collected[i], level) - prev);
        if (collected[i] >= level && in_hand(i) &&
            status_[i] != PlayerStatus::Mucked)
          eligible.push_back(i + 1);
      }
      if (amount > INT64_MAX) amount = INT64_MAX;
      if (amount > 0)
        out.emplace_back(money(static_cast<std::int64_t>(amount)),
                         std::move(eligible));
      prev = level;
    }
    return out;
  }

  Expected<std::vector<std::optional<Money>>, Diagnostic> finishing_stacks()
      const {
    if (!terminal_)
      return Diagnostic{Severity::Error, "NonTerminalState", "",
                        "the action list does not reach the end of the hand"};
    std::vector<std::optional<Money>> out(n_);
    for (int i = 0; i < n_; ++i)
      if (stack_known_[i]) out[i] = money(stacks_[i]);
    return out;
  }

  Snapshot snapshot(int step) const {
    Snapshot s;
    s.step = step;
    s.street = street_;
    s.phase = phase_;
    s.turn = turn();
    s.terminal = terminal_;
    s.pot = pot_total();
    for (int i = 0; i < n_; ++i) {
      s.stacks.push_back(stack_known_[i]
                             ? std::optional<Money>(money(stacks_[i]))
                             : std::nullopt);
      s.committed.push_back(money(street_bet_[i]));
    }
    s.board = board_;
    return s;
  }

  // Exact conservation: known stacks + pot + current bets == known starts.
  bool chips_conserved() const {
    __int128 now = 0, start = 0;
    for (int i = 0; i < n_; ++i) {
      if (!stack_known_[i]) continue;
      now += stacks_[i];
      now += total_committed_[i];
      start += start_stacks_known_[i];
    }
    return now == start;
  }

 private:
  Money money(std::int64_t atoms) const {
    auto d = Decimal::from_units(atoms, scale_, scale_ > 0);
    return d ? *d : Decimal{};
  }

  bool in_hand(int i) const {
    return status_[i] != PlayerStatus::Folded;
  }
  bool can_bet(int i) const {
    return in_hand(i) && status_[i] != PlayerStatus::AllIn &&
           status_[i] != PlayerStatus::Mucked &&
           status_[i] != PlayerStatus::Shown;
  }
  int count_in_hand() const {
    int c = 0;
    for (int i = 0; i < n_; ++i)
      if (in_hand(i)) ++c;
    return c;
  }
  bool no_more_betting() const {
    int c = 0;
    for (int i = 0; i < n_; ++i)
      if (can_bet(i)) ++c;
    return c <= 1;
  }

  std::int64_t street_tier(int s) const {
    if (plan_.sizing != engine_detail::Sizing::Fixed) return min_bet_;
    return plan_.streets[s].big_tier ? big_bet_ : small_bet_;
  }

  // Diagnostics helpers. `hard` problems are errors in every mode and the
  // action is ignored; rule transgressions follow the strictness setting.
  void hard_error(ApplyResult& r, const std::string& code,
                  const std::string& location, std::string msg) {
    add_diag(r.diagnostics, Severity::Error, code, location, std::move(msg));
    r.applied = false;
  }

  bool transgress(ApplyResult& r, const std::string& code,
                  const std::string& location, std::string msg) {
    if (strictness_ == Strictness::Strict) {
      add_diag(r.diagnostics, Severity::Error, code, location, std::move(msg));
      r.applied = false;
      return true;  // reject
    }
    if (strictness_ == Strictness::Warn)
      add_diag(r.diagnostics, Severity::Warning, code, location,
               std::move(msg));
    return false;  // proceed
  }

  // --- card bookkeeping ---

  bool card_seen(const Card& c) const {
    return std::find(seen_.begin(), seen_.end(), c) != seen_.end();
  }

  bool note_cards(ApplyResult& r, const std::string& location,
                  const std::vector<Card>& cards) {
    for (const Card& c : cards) {
      if (!c.known()) continue;
      if (card_seen(c)) {
        if (transgress(r, "DuplicateCard", location,
                       "card " + c.to_string() +
                           " appears twice in this hand"))
          return false;
      } else {
        seen_.push_back(c);
      }
    }
    return true;
  }

  // --- street flow ---

  const engine_detail::StreetDef& def() const { return plan_.streets[street_]; }

  bool dealing_complete() const {
    const auto& d = def();
    if (d.board_cards > 0) return board_dealt_street_ >= d.board_cards;
    int per_player = d.hole_down + d.hole_up;
    for (int i = 0; i < n_; ++i)
      if (in_hand(i) && hole_dealt_street_[i] < per_player) return false;
    return true;
  }

  void maybe_finish_dealing() {
    if (phase_ == Phase::Dealing && dealing_complete()) enter_betting();
  }

  void maybe_finish_drawing() {
    if (phase_ != Phase::Drawing) return;
    for (int i = 0; i < n_; ++i) {
      if (in_hand(i) && !drew_[i]) return;
      if (pending_draw_[i] > 0) return;
    }
    enter_betting();
  }

  void enter_betting() {
    if (no_more_betting()) {
      advance_street();
      return;
    }
    phase_ = Phase::Betting;
    turn_ = opener_seat();
    if (!turn_) close_betting();
  }

  void enter_street() {
    for (int i = 0; i < n_; ++i) {
      street_bet_[i] = 0;
      acted_[i] = false;
      raise_barred_[i] = false;
      hole_dealt_street_[i] = 0;
      drew_[i] = false;
    }
    board_dealt_street_ = 0;
    raises_this_street_ = 0;
    current_max_ = 0;
    aggressor_.reset();
    last_raise_size_ = street_tier(street_);
    turn_ = std::nullopt;
    if (def().draw) {
      phase_ = Phase::Drawing;
      turn_ = next_in_hand_from(0);
    } else {
      phase_ = Phase::Dealing;
    }
  }

  void advance_street() {
    if (street_ + 1 < static_cast<int>(plan_.streets.size())) {
      ++street_;
      enter_street();
    } else {
      enter_showdown();
    }
  }

  void close_betting() {
    turn_ = std::nullopt;
    advance_street();
  }

  void enter_showdown() {
    phase_ = Phase::Showdown;
    turn_ = std::nullopt;
    int start = 0;
    if (aggressor_ && in_hand(*aggressor_)) {
      start = *aggressor_;
    } else if (plan_.stud) {
      auto seat = upcard_opener();
      start = seat.value_or(0);
    }
    for (int k = 0; k < n_; ++k) {
      int i = (start + k) % n_;
      if (in_hand(i) && !disclosed_[i]) {
        turn_ = i;
        return;
      }
    }
    settle();  // everyone already disclosed
  }

  std::optional<int> next_in_hand_from(int start) const {
    for (int k = 0; k < n_; ++k) {
      int i = (start + k) % n_;
      if (in_hand(i)) return i;
    }
    return std::nullopt;
  }

  bool needs_action(int i) const {
    return can_bet(i) && (!acted_[i] || street_bet_[i] < current_max_);
  }

  std::optional<int> opener_seat() const {
    if (street_ == 0) {
      if (plan_.stud) {
        auto seat = bring_in_seat();
        if (seat) return seat;
        for (int k = 0; k < n_; ++k)  // no known up cards; fall back
          if (needs_action(k)) return k;
        return std::nullopt;
      }
      if (n_ == 2) {
        // heads-up: the button (last player) posts the small blind and
        // opens the first round
        if (needs_action(1)) return 1;
        if (needs_action(0)) return 0;
        return std::nullopt;
      }
      int start = 0;
      std::size_t run = 0;
      while (run < forced_bets_.size() && forced_bets_[run] > 0) ++run;
      if (run > 0) {
        start = static_cast<int>(run) % n_;
      } else {
        std::int64_t last_nonzero = -1;
        for (int i = 0; i < n_; ++i)
          if (forced_bets_[i] > 0) last_nonzero = i;
        start = last_nonzero >= 0 ? (static_cast<int>(last_nonzero) + 1) % n_ : 0;
      }
      for (int k = 0; k < n_; ++k) {
        int i = (start + k) % n_;
        if (needs_action(i)) return i;
      }
      return std::nullopt;
    }
    if (plan_.stud) {
      auto best = upcard_opener();
      if (best) {
        for (int k = 0; k < n_; ++k) {
          int i = (*best + k) % n_;
          if (needs_action(i)) return i;
        }
      }
      return std::nullopt;
    }
    for (int k = 0; k < n_; ++k)
      if (needs_action(k)) return k;
    return std::nullopt;
  }

  // Up-card comparison for stud openers; suits break exact ties so the
  // choice is always deterministic (club < diamond < heart < spade).
  std::vector<int> upcard_key(int i) const {
    std::vector<Card> ups;
    for (std::size_t k = 0; k < hole_[i].size(); ++k)
      if (hole_up_[i][k] && hole_[i][k].known()) ups.push_back(hole_[i][k]);
    std::sort(ups.begin(), ups.end(), [&](const Card& a, const Card& b) {
      int ra = plan_.razz ? eval_detail::rank_low(a.rank)
                          : eval_detail::rank_high(a.rank);
      int rb = plan_.razz ? eval_detail::rank_low(b.rank)
                          : eval_detail::rank_high(b.rank);
      if (ra != rb) return ra > rb;
      return static_cast<int>(a.suit) > static_cast<int>(b.suit);
    });
    // multiplicity groups: pairs on board beat high cards in stud high and
    // hurt in razz, which the same key encodes via category-first ordering
    std::vector<std::pair<int, int>> groups;
    for (const Card& c : ups) {
      int r = plan_.razz ? eval_detail::rank_low(c.rank)
                         : eval_detail::rank_high(c.rank);
      bool found = false;
      for (auto& [count, rank] : groups)
        if (rank == r) {
          ++count;
          found = true;
        }
      if (!found) groups.push_back({1, r});
    }
    std::sort(groups.begin(), groups.end(),
              [](auto& a, auto& b) { return a > b; });
    std::vector<int> key;
    key.push_back(groups.empty() ? 0 : groups[0].first);  // top multiplicity
    for (auto& [count, rank] : groups) {
      key.push_back(count);
      key.push_back(rank);
    }
    for (const Card& c : ups) key.push_back(static_cast<int>(c.suit));
    return key;
  }

  std::optional<int> upcard_opener() const {
    std::optional<int> best;
    std::vector<int> best_key;
    for (int i = 0; i < n_; ++i) {
      if (!in_hand(i)) continue;
      std::vector<int> key = upcard_key(i);
      if (key.size() <= 1) continue;  // no known up cards
      bool better = !best || (plan_.razz ? key < best_key : key > best_key);
      if (better) {
        best = i;
        best_key = key;
      }
    }
    return best;
  }

  std::optional<int> bring_in_seat() const {
    // single up card at this point: lowest brings in (highest in razz)
    std::optional<int> pick;
    std::pair<int, int> pick_key{};
    for (int i = 0; i < n_; ++i) {
      if (!in_hand(i) || status_[i] == PlayerStatus::AllIn) continue;
      std::optional<std::pair<int, int>> key;
      for (std::size_t k = 0; k < hole_[i].size(); ++k)
        if (hole_up_[i][k] && hole_[i][k].known())
          key = {plan_.razz ? eval_detail::rank_low(hole_[i][k].rank)
                            : eval_detail::rank_high(hole_[i][k].rank),
                 static_cast<int>(hole_[i][k].suit)};
      if (!key) continue;
      bool better = !pick || (plan_.razz ? *key > pick_key : *key < pick_key);
      if (better) {
        pick = i;
        pick_key = *key;
      }
    }
    return pick;
  }

  void advance_turn_betting() {
    if (!turn_) return;
    for (int k = 1; k <= n_; ++k) {
      int i = (*turn_ + k) % n_;
      if (needs_action(i)) {
        turn_ = i;
        return;
      }
    }
    close_betting();
  }

  void advance_turn_drawing() {
    for (int k = 0; k < n_; ++k) {
      int i = (turn_ ? (*turn_ + k) % n_ : k);
      if (in_hand(i) && !drew_[i]) {
        turn_ = i;
        return;
      }
    }
    turn_ = std::nullopt;  // waiting on replacement deals
  }

  void advance_turn_showdown() {
    int start = turn_ ? *turn_ + 1 : 0;
    for (int k = 0; k < n_; ++k) {
      int i = (start + k) % n_;
      if (in_hand(i) && !disclosed_[i]) {
        turn_ = i;
        return;
      }
    }
    turn_ = std::nullopt;
    settle();
  }

  void settle_if_all_disclosed() {
    for (int i = 0; i < n_; ++i)
      if (in_hand(i) && !disclosed_[i]) return;
    if (phase_ == Phase::Showdown) settle();
  }

  void commit(int i, std::int64_t add) {
    if (add <= 0) return;
    // players with unknown stacks have no affordability cap; saturate so
    // hostile inputs cannot overflow the accounting
    if (street_bet_[i] > INT64_MAX - add) add = INT64_MAX - street_bet_[i];
    if (total_committed_[i] > INT64_MAX - add)
      add = INT64_MAX - total_committed_[i];
    street_bet_[i] += add;
    total_committed_[i] += add;
    if (stack_known_[i]) {
      stacks_[i] -= add;
      if (stacks_[i] <= 0) {
        stacks_[i] = 0;
        status_[i] = PlayerStatus::AllIn;
      }
    }
  }

  std::int64_t affordable_to(int i) const {
    if (!stack_known_[i]) return INT64_MAX;
    return street_bet_[i] + stacks_[i];
  }

  std::int64_t min_raise_to() const {
    if (plan_.sizing == engine_detail::Sizing::Fixed) {
      std::int64_t tier = street_tier(street_);
      if (current_max_ == 0) return tier;
      if (current_max_ < tier) return tier;  // completing a bring-in/short bet
      return current_max_ + tier;
    }
    if (current_max_ == 0) return min_bet_;
    return current_max_ + last_raise_size_;
  }

  std::int64_t pot_limit_cap(int i) const {
    __int128 pot_prev = 0, street_total = 0;
    for (int k = 0; k < n_; ++k) {
      pot_prev += total_committed_[k] - street_bet_[k];
      street_total += street_bet_[k];
    }
    __int128 cap = __int128(current_max_) + pot_prev + street_total +
                   (current_max_ - street_bet_[i]);
    return cap > INT64_MAX ? INT64_MAX : static_cast<std::int64_t>(cap);
  }

  // --- action handlers ---

  void do_deal_board(const ActionRecord::DealBoard& a,
                     const std::string& loc, ApplyResult& r) {
    if (!note_cards(r, loc, a.cards)) return;
    bool in_deal_phase = phase_ == Phase::Dealing && def().board_cards > 0;
    if (!in_deal_phase) {
      if (transgress(r, "WrongStreetAction", loc,
                     "no board cards are due now"))
        return;
    } else if (board_dealt_street_ + static_cast<int>(a.cards.size()) >
               def().board_cards) {
      if (transgress(r, "WrongStreetAction", loc,
                     "more board cards than the street deals"))
        return;
    }
    for (const Card& c : a.cards) {
      board_.push_back(c);
      ++board_dealt_street_;
    }
    maybe_finish_dealing();
  }

  void do_deal_hole(const ActionRecord::DealHole& a, const std::string& loc,
                    ApplyResult& r) {
    int i = a.player - 1;
    if (i < 0 || i >= n_) {
      hard_error(r, "BadPlayerIndex", loc, "no such player");
      return;
    }
    if (!in_hand(i)) {
      if (transgress(r, "WrongStreetAction", loc,
                     "dealing to a folded player"))
        return;
    }
    if (!note_cards(r, loc, a.cards)) return;

    if (phase_ == Phase::Drawing) {
      if (pending_draw_[i] < static_cast<int>(a.cards.size())) {
        if (transgress(r, "WrongStreetAction", loc,
                       "p" + std::to_string(a.player) +
                           " has no replacement cards due"))
          return;
        pending_draw_[i] = 0;
      } else {
        pending_draw_[i] -= static_cast<int>(a.cards.size());
      }
      for (const Card& c : a.cards) {
        hole_[i].push_back(c);
        hole_up_[i].push_back(false);
      }
      maybe_finish_drawing();
      return;
    }

    bool in_deal_phase =
        phase_ == Phase::Dealing && def().hole_down + def().hole_up > 0;
    if (!in_deal_phase) {
      if (transgress(r, "WrongStreetAction", loc, "no hole cards are due now"))
        return;
    } else if (hole_dealt_street_[i] + static_cast<int>(a.cards.size()) >
               def().hole_down + def().hole_up) {
      if (transgress(r, "WrongStreetAction", loc,
                     "more hole cards than the street deals"))
        return;
    }
    for (const Card& c : a.cards) {
      bool up = hole_dealt_street_[i] >= def().hole_down &&
                hole_dealt_street_[i] < def().hole_down + def().hole_up;
      hole_[i].push_back(c);
      hole_up_[i].push_back(up);
      ++hole_dealt_street_[i];
    }
    maybe_finish_dealing();
  }

  bool betting_checks(int i, const std::string& loc, ApplyResult& r,
                      const char* verb) {
    if (i < 0 || i >= n_) {
      hard_error(r, "BadPlayerIndex", loc, "no such player");
      return false;
    }
    if (!in_hand(i) || status_[i] == PlayerStatus::Mucked) {
      hard_error(r, "WrongStreetAction", loc,
                 "p" + std::to_string(i + 1) + " is no longer in the hand");
      return false;
    }
    if (status_[i] == PlayerStatus::AllIn) {
      if (transgress(r, "WrongStreetAction", loc,
                     "p" + std::to_string(i + 1) + " is all-in"))
        return false;
    }
    if (phase_ != Phase::Betting) {
      if (transgress(r, "WrongStreetAction", loc,
                     std::string(verb) + " outside a betting round"))
        return false;
    } else if (turn_ && *turn_ != i) {
      if (transgress(r, "OutOfTurn", loc,
                     "expected p" + std::to_string(*turn_ + 1) + " to act"))
        return false;
    }
    return true;
  }

  void after_betting_action(int i) {
    if (count_in_hand() == 1) {
      settle();
      return;
    }
    if (phase_ != Phase::Betting) return;
    turn_ = i;
    advance_turn_betting();
  }

  void do_bring_in(const ActionRecord::PostBringIn& a, const std::string& loc,
                   ApplyResult& r) {
    int i = a.player - 1;
    if (!betting_checks(i, loc, r, "pb")) return;
    if (!plan_.stud || street_ != 0 || !bring_in_pending_) {
      if (transgress(r, "WrongStreetAction", loc,
                     "no bring-in is due now"))
        return;
    }
    bring_in_pending_ = false;
    std::int64_t pay = std::min<std::int64_t>(
        bring_in_, stack_known_[i] ? stacks_[i] : bring_in_);
    commit(i, pay);
    acted_[i] = true;
    current_max_ = std::max(current_max_, street_bet_[i]);
    after_betting_action(i);
  }

  void do_check_call(const ActionRecord::CheckCall& a, const std::string& loc,
                     ApplyResult& r) {
    int i = a.player - 1;
    if (!betting_checks(i, loc, r, "cc")) return;
    if (bring_in_pending_ && plan_.stud && street_ == 0 && current_max_ == 0) {
      if (transgress(r, "WrongStreetAction", loc,
                     "the opener must post the bring-in"))
        return;
      bring_in_pending_ = false;
    }
    std::int64_t owe = std::max<std::int64_t>(0, current_max_ - street_bet_[i]);
    if (stack_known_[i]) owe = std::min(owe, stacks_[i]);
    commit(i, owe);
    acted_[i] = true;
    after_betting_action(i);
  }

  void do_fold(const ActionRecord::Fold& a, const std::string& loc,
               ApplyResult& r) {
    int i = a.player - 1;
    if (i < 0 || i >= n_) {
      hard_error(r, "BadPlayerIndex", loc, "no such player");
      return;
    }
    if (!in_hand(i)) {
      hard_error(r, "WrongStreetAction", loc, "player already folded");
      return;
    }
    if (phase_ != Phase::Betting) {
      if (transgress(r, "WrongStreetAction", loc,
                     "fold outside a betting round"))
        return;
    } else if (turn_ && *turn_ != i) {
      if (transgress(r, "OutOfTurn", loc,
                     "expected p" + std::to_string(*turn_ + 1) + " to act"))
        return;
    }
    status_[i] = PlayerStatus::Folded;
    if (count_in_hand() == 1) {
      settle();
      return;
    }
    if (phase_ == Phase::Betting) {
      turn_ = i;
      advance_turn_betting();
    } else if (phase_ == Phase::Drawing) {
      if (turn_ && *turn_ == i) advance_turn_drawing();
      maybe_finish_drawing();
    } else if (phase_ == Phase::Showdown) {
      if (turn_ && *turn_ == i)
        advance_turn_showdown();
      else
        settle_if_all_disclosed();
    }
  }

  void do_cbr(const ActionRecord::CompleteBetRaiseTo& a,
              const std::string& loc, ApplyResult& r) {
    int i = a.player - 1;
    if (!betting_checks(i, loc, r, "cbr")) return;
    auto to = a.amount.units_at_scale(scale_);
    if (!to || *to <= 0) {
      hard_error(r, "BadAmount", loc, "unusable wager amount");
      return;
    }
    std::int64_t amount = *to;
    if (amount <= street_bet_[i]) {
      hard_error(r, "BadAmount", loc,
                 "wager does not exceed the player's current bet");
      return;
    }
    std::int64_t afford = affordable_to(i);
    if (amount > afford) {
      if (transgress(r, "BadAmount", loc,
                     "p" + std::to_string(i + 1) +
                         " cannot cover the wager; capping at the stack"))
        return;
      amount = afford;
    }
    if (amount == current_max_) {
      // wagering exactly the current maximum is a call in disguise
      if (transgress(r, "BelowMinimum", loc,
                     "cbr amount equals the current bet; treating as a call"))
        return;
      commit(i, amount - street_bet_[i]);
      acted_[i] = true;
      after_betting_action(i);
      return;
    }
    if (amount < current_max_) {
      if (transgress(r, "BelowMinimum", loc,
                     "wager is below the current bet"))
        return;
      commit(i, amount - street_bet_[i]);
      acted_[i] = true;
      after_betting_action(i);
      return;
    }

    // a genuine bet or raise
    bool all_in = amount == afford;
    std::int64_t min_to = min_raise_to();
    if (bring_in_pending_ && plan_.stud && street_ == 0) {
      // the opener may complete directly instead of posting the bring-in
      bring_in_pending_ = false;
    }
    if (amount < min_to && !all_in) {
      if (transgress(r, "BelowMinimum", loc,
                     "raise to " + money(amount).to_string() +
                         " is below the legal minimum " +
                         money(min_to).to_string()))
        return;
    }
    if (plan_.sizing == engine_detail::Sizing::Fixed && amount > min_to) {
      if (transgress(r, "AboveCap", loc,
                     "fixed-limit wager above the tier amount"))
        return;
    }
    if (plan_.sizing == engine_detail::Sizing::Fixed && raise_cap_ > 0 &&
        raises_this_street_ >= raise_cap_) {
      if (transgress(r, "AboveCap", loc,
                     "fixed-limit raise cap of " +
                         std::to_string(raise_cap_) + " bets reached"))
        return;
    }
    if (plan_.sizing == engine_detail::Sizing::PotLimit) {
      std::int64_t cap = pot_limit_cap(i);
      if (amount > cap) {
        if (transgress(r, "AboveCap", loc,
                       "wager exceeds the pot-limit cap " +
                           money(cap).to_string()))
          return;
      }
    }
    if (raise_barred_[i]) {
      if (transgress(r, "RaiseNotReopened", loc,
                     "a short all-in did not reopen the betting"))
        return;
    }

    std::int64_t delta = amount - current_max_;
    // fixed-limit: reaching the tier amount is a full bet (a bring-in
    // completion raises by less than the tier but still reopens play)
    bool full_raise = plan_.sizing == engine_detail::Sizing::Fixed
                          ? amount >= min_to
                          : delta >= last_raise_size_ || current_max_ == 0;
    for (int k = 0; k < n_; ++k) {
      if (k == i) continue;
      if (full_raise)
        raise_barred_[k] = false;
      else if (acted_[k])
        raise_barred_[k] = true;
      acted_[k] = false;
    }
    if (full_raise) last_raise_size_ = std::max(delta, std::int64_t(1));
    commit(i, amount - street_bet_[i]);
    acted_[i] = true;
    current_max_ = amount;
    aggressor_ = i;
    ++raises_this_street_;
    after_betting_action(i);
  }

  void do_draw(const ActionRecord::StandPatDiscard& a, const std::string& loc,
               ApplyResult& r) {
    int i = a.player - 1;
    if (i < 0 || i >= n_) {
      hard_error(r, "BadPlayerIndex", loc, "no such player");
      return;
    }
    if (!in_hand(i)) {
      hard_error(r, "WrongStreetAction", loc, "player is no longer in the hand");
      return;
    }
    if (phase_ != Phase::Drawing) {
      if (transgress(r, "WrongStreetAction", loc,
                     "no draw round is in progress"))
        return;
    } else if (turn_ && *turn_ != i) {
      if (transgress(r, "OutOfTurn", loc,
                     "expected p" + std::to_string(*turn_ + 1) + " to draw"))
        return;
    }
    if (drew_[i]) {
      if (transgress(r, "WrongStreetAction", loc, "player already drew"))
        return;
    }

    // remove the discards from the hand: exact matches first, then unknowns
    std::vector<Card> hole = hole_[i];
    for (const Card& c : a.cards) {
      auto it = std::find(hole.begin(), hole.end(), c);
      if (it == hole.end() && c.known())
        it = std::find(hole.begin(), hole.end(), kUnknownCard);
      if (it == hole.end() && !c.known() && !hole.empty())
        it = hole.begin();  // an unseen discard may stand for any card
      if (it == hole.end()) {
        hard_error(r, "DiscardNotHeld", loc,
                   "p" + std::to_string(a.player) + " does not hold " +
                       c.to_string());
        return;
      }
      hole.erase(it);
    }
    hole_[i] = std::move(hole);
    hole_up_[i].assign(hole_[i].size(), false);
    pending_draw_[i] += static_cast<int>(a.cards.size());
    drew_[i] = true;
    if (phase_ == Phase::Drawing) {
      turn_ = i;
      advance_turn_drawing();
      maybe_finish_drawing();
    }
  }

  void do_show_muck(const ActionRecord::ShowMuck& a, const std::string& loc,
                    ApplyResult& r) {
    int i = a.player - 1;
    if (i < 0 || i >= n_) {
      hard_error(r, "BadPlayerIndex", loc, "no such player");
      return;
    }
    if (!in_hand(i)) {
      hard_error(r, "WrongStreetAction", loc, "player is no longer in the hand");
      return;
    }
    if (disclosed_[i]) {
      if (transgress(r, "WrongStreetAction", loc, "player already showed"))
        return;
    }
    bool showdown_time = phase_ == Phase::Showdown ||
                         (no_more_betting() && phase_ != Phase::Betting);
    if (!showdown_time) {
      if (transgress(r, "WrongStreetAction", loc,
                     "show/muck before the showdown"))
        return;
    }
    if (phase_ == Phase::Showdown && turn_ && *turn_ != i) {
      if (transgress(r, "OutOfTurn", loc,
                     "expected p" + std::to_string(*turn_ + 1) + " to show"))
        return;
    }

    if (a.disclosure == ActionRecord::Disclosure::Muck) {
      status_[i] = PlayerStatus::Mucked;
    } else if (a.disclosure == ActionRecord::Disclosure::ShowPrevious) {
      for (const Card& c : hole_[i])
        if (!c.known()) {
          hard_error(r, "DashWithoutKnownHole", loc,
                     "'-' requires all previously dealt cards to be known");
          return;
        }
      status_[i] = PlayerStatus::Shown;
    } else {
      bool unknown = false;
      for (const Card& c : a.cards)
        if (!c.known()) unknown = true;
      if (unknown &&
          transgress(r, "UnknownShowdownCards", loc,
                     "shown cards must all be known"))
        return;
      if (a.cards.size() != hole_[i].size()) {
        if (transgress(r, "ShowMismatch", loc,
                       "shown card count differs from the player's hand"))
          return;
      } else {
        bool fully_known = true;
        for (const Card& c : hole_[i])
          if (!c.known()) fully_known = false;
        if (fully_known) {
          std::vector<Card> a_sorted = a.cards, h_sorted = hole_[i];
          std::sort(a_sorted.begin(), a_sorted.end());
          std::sort(h_sorted.begin(), h_sorted.end());
          if (a_sorted != h_sorted &&
              transgress(r, "ShowMismatch", loc,
                         "shown cards differ from the dealt cards"))
            return;
        }
      }
      // the reveal replaces the recorded hand; update the seen-card set
      for (std::size_t k = 0; k < hole_[i].size(); ++k) {
        const Card& c = hole_[i][k];
        if (!c.known()) continue;
        auto it = std::find(seen_.begin(), seen_.end(), c);
        if (it != seen_.end()) seen_.erase(it);
      }
      if (!note_cards(r, loc, a.cards)) return;
      hole_[i] = a.cards;
      hole_up_[i].assign(hole_[i].size(), false);
      status_[i] = PlayerStatus::Shown;
    }
    disclosed_[i] = true;
    if (phase_ == Phase::Showdown) {
      turn_ = i;
      advance_turn_showdown();
    }
    // disclosures during an all-in runout settle once the dealing ends
  }

  // --- settlement ---

  struct PlayerStrengths {
    bool eligible = false;
    std::vector<std::optional<EvaluatedStrength>> by_order;
  };

  void settle() {
    if (terminal_) return;

    // return any uncalled portion of the final bet
    std::vector<std::int64_t> bet(n_);
    for (int i = 0; i < n_; ++i)
      bet[i] = total_committed_[i] - ante_committed_[i];
    int top = -1;
    bool unique = false;
    for (int i = 0; i < n_; ++i) {
      if (top < 0 || bet[i] > bet[top]) {
        top = i;
        unique = true;
      } else if (bet[i] == bet[top]) {
        unique = false;
      }
    }
    if (top >= 0 && unique) {
      std::int64_t second = 0;
      for (int i = 0; i < n_; ++i)
        if (i != top) second = std::max(second, bet[i]);
      std::int64_t refund = bet[top] - second;
      if (refund > 0) {
        total_committed_[top] -= refund;
        if (stack_known_[top]) stacks_[top] += refund;
      }
    }

    // strengths for every potential winner
    auto rules = showdown_rules(variant_);
    std::vector<PlayerStrengths> ps(n_);
    bool sole = count_in_hand() == 1;
    for (int i = 0; i < n_; ++i) {
      if (!in_hand(i) || status_[i] == PlayerStatus::Mucked) continue;
      if (sole) {
        ps[i].eligible = true;
        continue;
      }
      if (status_[i] != PlayerStatus::Shown) continue;
      ps[i].by_order.resize(rules.orders.size());
      bool any = false;
      for (std::size_t k = 0; k < rules.orders.size(); ++k) {
        auto ev = evaluate(rules.orders[k], hole_[i], board_, rules.selection);
        if (ev.ok()) {
          ps[i].by_order[k] = ev.value();
          if (ev.value()) any = true;
        } else {
          add_diag(settle_diags_,
                   strictness_ == Strictness::Strict ? Severity::Error
                                                     : Severity::Warning,
                   ev.error().code == EvalError::Code::UnknownCardInShowdown
                       ? "UnknownShowdownCards"
                       : "UnrankableHand",
                   "p" + std::to_string(i + 1), ev.error().message());
        }
      }
      ps[i].eligible = any;
    }

    // Side-pot layers. Levels come from the eligible winners' totals (the
    // all-in caps); chips that ineligible players committed above the top
    // cap are forfeit and join the last pot.
    std::vector<std::int64_t> levels;
    bool any_eligible = false;
    for (int i = 0; i < n_; ++i) {
      if (!ps[i].eligible) continue;
      any_eligible = true;
      if (total_committed_[i] > 0) levels.push_back(total_committed_[i]);
    }
    std::sort(levels.begin(), levels.end());
    levels.erase(std::unique(levels.begin(), levels.end()), levels.end());

    if (!any_eligible || levels.empty()) {
      // nobody can claim the chips (all folded hands, or no eligible player
      // put anything in); hand everything to the earliest remaining player
      __int128 amount = 0;
      for (int i = 0; i < n_; ++i) amount += total_committed_[i];
      int fallback = 0;
      for (int i = 0; i < n_; ++i)
        if (in_hand(i)) {
          fallback = i;
          break;
        }
      if (amount > 0) {
        if (!any_eligible)
          add_diag(settle_diags_, Severity::Warning, "NoEligibleWinner", "",
                   "a pot had no rankable claimant");
        pay(fallback, amount > INT64_MAX
                          ? INT64_MAX
                          : static_cast<std::int64_t>(amount));
      }
    } else {
      std::int64_t top_cap = levels.back();
      std::int64_t prev = 0;
      for (std::int64_t level : levels) {
        __int128 amount128 = 0;
        std::vector<int> eligible;
        for (int i = 0; i < n_; ++i) {
          amount128 += std::max<std::int64_t>(
              0, std::min(total_committed_[i], level) - prev);
          if (level == top_cap)  // forfeited excess above the last cap
            amount128 +=
                std::max<std::int64_t>(0, total_committed_[i] - top_cap);
          if (total_committed_[i] >= level && ps[i].eligible)
            eligible.push_back(i);
        }
        prev = level;
        std::int64_t amount = amount128 > INT64_MAX
                                  ? INT64_MAX
                                  : static_cast<std::int64_t>(amount128);
        if (amount == 0) continue;
        award_pot(amount, eligible, ps, rules, sole);
      }
    }

    for (int i = 0; i < n_; ++i) street_bet_[i] = 0;
    for (int i = 0; i < n_; ++i) total_committed_[i] = 0;
    turn_ = std::nullopt;
    terminal_ = true;
    phase_ = Phase::Done;
  }

  void pay(int i, std::int64_t amount) {
    if (!stack_known_[i]) return;
    if (stacks_[i] > INT64_MAX - amount) amount = INT64_MAX - stacks_[i];
    stacks_[i] += amount;
  }

  static Ordering cmp(const EvaluatedStrength& a, const EvaluatedStrength& b) {
    auto c = compare(a, b);
    return c.ok() ? c.value() : Ordering::Equal;
  }

  std::vector<int> best_of(const std::vector<int>& eligible,
                           const std::vector<PlayerStrengths>& ps,
                           std::size_t order_idx) const {
    std::vector<int> winners;
    for (int i : eligible) {
      if (order_idx >= ps[i].by_order.size() || !ps[i].by_order[order_idx])
        continue;
      if (winners.empty()) {
        winners.push_back(i);
        continue;
      }
      Ordering o =
          cmp(*ps[i].by_order[order_idx], *ps[winners[0]].by_order[order_idx]);
      if (o == Ordering::Greater) {
        winners.clear();
        winners.push_back(i);
      } else if (o == Ordering::Equal) {
        winners.push_back(i);
      }
    }
    return winners;
  }

  // Splits `amount` among `winners` (already sorted by seat); indivisible
  // remainders go one atom at a time to the earliest position.
  void divide(std::int64_t amount, const std::vector<int>& winners) {
    if (winners.empty()) return;
    std::int64_t each = amount / static_cast<std::int64_t>(winners.size());
    std::int64_t rest = amount % static_cast<std::int64_t>(winners.size());
    for (std::size_t k = 0; k < winners.size(); ++k) {
      std::int64_t share = each + (static_cast<std::int64_t>(k) < rest ? 1 : 0);
      pay(winners[k], share);
    }
  }

  void award_pot(std::int64_t amount, const std::vector<int>& eligible,
                 const std::vector<PlayerStrengths>& ps,
                 const ShowdownRules& rules, bool sole) {
    if (sole || rules.orders.size() == 1) {
      std::vector<int> winners =
          sole ? eligible : best_of(eligible, ps, 0);
      if (winners.empty()) winners = eligible;
      divide(amount, winners);
      return;
    }
    // split variant: half to the best high, half to the best qualifying low;
    // with no qualifying low the high hand scoops
    std::vector<int> high = best_of(eligible, ps, 0);
    std::vector<int> low = best_of(eligible, ps, 1);
    if (high.empty()) high = eligible;
    if (low.empty()) {
      divide(amount, high);
      return;
    }
    std::int64_t half = amount / 2;
    std::int64_t odd = amount - 2 * half;
    if (odd > 0) {
      // odd atom goes to the winner earliest in player order across halves
      int first_high = high.front(), first_low = low.front();
      if (first_high <= first_low)
        divide(half + odd, high), divide(half, low);
      else
        divide(half, high), divide(half + odd, low);
      return;
    }
    divide(half, high);
    divide(half, low);
  }

 public:
  // Diagnostics produced during settlement (showdown ranking problems).
  const std::vector<Diagnostic>& settlement_diagnostics() const {
    return settle_diags_;
  }

 private:
  Strictness strictness_ = Strictness::Warn;
  VariantCode variant_ = VariantCode::NT;
  engine_detail::VariantPlan plan_;
  int n_ = 0;
  int scale_ = 0;
  std::int64_t bring_in_ = 0, small_bet_ = 0, big_bet_ = 0, min_bet_ = 0;
  std::vector<std::int64_t> forced_bets_;

  std::vector<std::int64_t> stacks_;
  std::vector<bool> stack_known_;
  std::vector<std::int64_t> street_bet_, total_committed_, ante_committed_;
  std::vector<PlayerStatus> status_;
  std::vector<std::vector<Card>> hole_;
  std::vector<std::vector<bool>> hole_up_;
  std::vector<Card> board_;
  std::vector<int> pending_draw_;
  std::vector<bool> drew_, disclosed_, acted_, raise_barred_;
  std::vector<Card> seen_;
  std::vector<int> hole_dealt_street_;
  int board_dealt_street_ = 0;
  std::int64_t current_max_ = 0, last_raise_size_ = 0;
  std::optional<int> aggressor_;
  int raise_cap_ = 0;
  int raises_this_street_ = 0;
  int street_ = 0;
  Phase phase_ = Phase::Dealing;
  std::optional<int> turn_;
  bool bring_in_pending_ = false;
  bool terminal_ = false;
  std::vector<Diagnostic> settle_diags_;

  // for conservation checks
  std::vector<std::int64_t> start_stacks_known_;
};

struct ReplayResult {
  std::vector<Snapshot> snapshots;
  std::vector<Diagnostic> diagnostics;
  bool completed = true;  // false if strict mode aborted the replay
  std::optional<GameState> state;
};

// Replays the whole action list, producing a snapshot after the initial
// state and after every action. When the hand reaches its end and the
// document carries finishing_stacks, the computed stacks are checked.
inline ReplayResult replay(const HandDocument& doc, Strictness strictness) {
  ReplayResult result;
  auto init = GameState::initial(doc, strictness, result.diagnostics);
  if (!init.ok()) {
    result.diagnostics.push_back(init.error());
    result.completed = false;
    return result;
  }
  GameState state = std::move(init.value());
  result.snapshots.push_back(state.snapshot(0));

  for (std::size_t i = 0; i < doc.actions.size(); ++i) {
    std::string loc = "actions[" + std::to_string(i) + "]";
    ApplyResult ar = state.apply(doc.actions[i], loc);
    for (auto& d : ar.diagnostics) result.diagnostics.push_back(std::move(d));
    result.snapshots.push_back(state.snapshot(static_cast<int>(i) + 1));
    if (!ar.applied && strictness == Strictness::Strict) {
      result.completed = false;
      break;
    }
  }
  for (const auto& d : state.settlement_diagnostics())
    result.diagnostics.push_back(d);

  if (state.terminal() && doc.finishing_stacks) {
    auto computed = state.finishing_stacks();
    if (computed.ok()) {
      for (int p = 1; p <= state.player_count(); ++p) {
        const auto& got = computed.value()[p - 1];
        if (!got) continue;
        if (static_cast<std::size_t>(p) <= doc.finishing_stacks->size() &&
            !(*got == (*doc.finishing_stacks)[p - 1])) {
          add_diag(result.diagnostics,
                   strictness == Strictness::Strict ? Severity::Error
                                                    : Severity::Warning,
                   "FinishingStackMismatch", "finishing_stacks",
                   "p" + std::to_string(p) + " computed " +
                       got->to_string() + " but the document says " +
                       (*doc.finishing_stacks)[p - 1].to_string());
        }
      }
    }
  }
  result.state = std::move(state);
  return result;
}

}  // namespace phh
