#pragma once

// Two-letter DFAs built from a reference cycle, words over {a, b}, and
// synchronizing-word search over the power automaton.

#include <algorithm>
#include <cstdint>
#include <deque>
#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

#include "qsync/errors.hpp"

namespace qsync {

enum class Letter : std::uint8_t { a = 0, b = 1 };

inline char to_char(Letter l) { return l == Letter::a ? 'a' : 'b'; }

inline Letter swapped(Letter l) { return l == Letter::a ? Letter::b : Letter::a; }

/// How a word string is read.
///
/// `operator_order` is the right-to-left reading used when a word is written
/// as a product of operators: the rightmost letter acts first.
/// `application` lists letters in the order they act.
enum class Order : std::uint8_t { operator_order, application };

inline std::string_view to_string(Order o) {
  return o == Order::operator_order ? "operator" : "application";
}

inline Order parse_order(std::string_view s) {
  if (s == "operator") return Order::operator_order;
  if (s == "application") return Order::application;
  throw std::invalid_argument("unknown word order '" + std::string(s) + "'");
}

class Word {
 public:
  Word() = default;
  Word(std::vector<Letter> letters, Order order) : letters_(std::move(letters)), order_(order) {}

  /// Parses lowercase 'a'/'b' characters.
  static Word parse(std::string_view text, Order order) {
    std::vector<Letter> letters;
    letters.reserve(text.size());
    for (char c : text) {
      if (c == 'a')
        letters.push_back(Letter::a);
      else if (c == 'b')
        letters.push_back(Letter::b);
      else
        throw std::invalid_argument(std::string("invalid letter '") + c + "' in word");
    }
    return Word(std::move(letters), order);
  }

  const std::vector<Letter>& letters() const { return letters_; }
  Order order() const { return order_; }
  std::size_t size() const { return letters_.size(); }
  bool empty() const { return letters_.empty(); }

  /// Same word, re-expressed in the other convention (the sequence reverses).
  Word converted(Order target) const {
    if (target == order_) return *this;
    std::vector<Letter> rev(letters_.rbegin(), letters_.rend());
    return Word(std::move(rev), target);
  }

  /// Letters in the order they act.
  std::vector<Letter> applied() const { return converted(Order::application).letters_; }

  /// Exchanges a and b, keeping the order tag.
  Word swapped_letters() const {
    std::vector<Letter> out(letters_.size());
    std::transform(letters_.begin(), letters_.end(), out.begin(), [](Letter l) { return swapped(l); });
    return Word(std::move(out), order_);
  }

  std::string str() const {
    std::string s;
    s.reserve(letters_.size());
    for (Letter l : letters_) s.push_back(to_char(l));
    return s;
  }

  /// Two words are equal when they describe the same sequence of actions.
  friend bool operator==(const Word& x, const Word& y) { return x.applied() == y.applied(); }

 private:
  std::vector<Letter> letters_;
  Order order_ = Order::operator_order;
};

/// A permutation of the node labels with pi[0] = 1 and pi[1] = 0.
class PermutationSpec {
 public:
  explicit PermutationSpec(std::vector<int> pi) : pi_(std::move(pi)) {
    const int n = static_cast<int>(pi_.size());
    if (n < 2) throw std::invalid_argument("permutation needs at least 2 states");
    std::vector<bool> seen(pi_.size(), false);
    for (int v : pi_) {
      if (v < 0 || v >= n || seen[v]) throw std::invalid_argument("pi is not a bijection");
      seen[v] = true;
    }
    if (pi_[0] != 1 || pi_[1] != 0) throw std::invalid_argument("pi must satisfy pi[0] = 1 and pi[1] = 0");
  }

  /// The transposition (1,0).
  static PermutationSpec basic(int n) {
    if (n < 2) throw std::invalid_argument("basic preset needs n >= 2");
    std::vector<int> pi(n);
    for (int k = 0; k < n; ++k) pi[k] = k;
    std::swap(pi[0], pi[1]);
    return PermutationSpec(std::move(pi));
  }

  /// (1,0)(n-1,...,2): swaps 0 and 1 and reverses nodes 2..n-1.
  static PermutationSpec reversed(int n) {
    if (n < 4) throw std::invalid_argument("reversed preset needs n >= 4");
    std::vector<int> pi(n);
    pi[0] = 1;
    pi[1] = 0;
    for (int k = 2; k < n; ++k) pi[k] = n + 1 - k;
    return PermutationSpec(std::move(pi));
  }

  static PermutationSpec preset(std::string_view name, int n) {
    if (name == "basic") return basic(n);
    if (name == "reversed") return reversed(n);
    throw std::invalid_argument("unknown preset '" + std::string(name) + "'");
  }

  int n() const { return static_cast<int>(pi_.size()); }
  int operator()(int k) const { return pi_.at(k); }
  const std::vector<int>& values() const { return pi_; }

  std::vector<int> inverse() const {
    std::vector<int> inv(pi_.size());
    for (std::size_t k = 0; k < pi_.size(); ++k) inv[pi_[k]] = static_cast<int>(k);
    return inv;
  }

  friend bool operator==(const PermutationSpec&, const PermutationSpec&) = default;

 private:
  std::vector<int> pi_;
};

class Dfa {
 public:
  Dfa(std::vector<int> delta_a, std::vector<int> delta_b) : delta_a_(std::move(delta_a)), delta_b_(std::move(delta_b)) {
    if (delta_a_.size() != delta_b_.size()) throw std::invalid_argument("transition tables differ in size");
    if (delta_a_.empty()) throw std::invalid_argument("DFA needs at least one state");
    const int n = this->n();
    auto in_range = [n](int q) { return q >= 0 && q < n; };
    if (!std::all_of(delta_a_.begin(), delta_a_.end(), in_range) ||
        !std::all_of(delta_b_.begin(), delta_b_.end(), in_range))
      throw std::invalid_argument("transition target out of range");
  }

  int n() const { return static_cast<int>(delta_a_.size()); }
  const std::vector<int>& delta_a() const { return delta_a_; }
  const std::vector<int>& delta_b() const { return delta_b_; }
  const std::vector<int>& delta(Letter l) const { return l == Letter::a ? delta_a_ : delta_b_; }

  friend bool operator==(const Dfa&, const Dfa&) = default;

 private:
  std::vector<int> delta_a_;
  std::vector<int> delta_b_;
};

/// Subset of {0, ..., n-1} as a bitmask; n is bounded by the mask width.
struct StateSet {
  std::uint64_t members = 0;

  static StateSet full(int n) {
    if (n < 1 || n > 64) throw std::invalid_argument("state set supports 1..64 states");
    return {n == 64 ? ~std::uint64_t{0} : (std::uint64_t{1} << n) - 1};
  }
  static StateSet of(std::initializer_list<int> qs) {
    StateSet s;
    for (int q : qs) s.members |= std::uint64_t{1} << q;
    return s;
  }

  bool contains(int q) const { return (members >> q) & 1U; }
  int size() const { return __builtin_popcountll(members); }
  bool empty() const { return members == 0; }

  std::vector<int> elements() const {
    std::vector<int> out;
    for (int q = 0; q < 64; ++q)
      if (contains(q)) out.push_back(q);
    return out;
  }

  friend bool operator==(const StateSet&, const StateSet&) = default;
};

/// Reference a-graph: 0 feeds the cycle 1 -> 2 -> ... -> n-1 -> 1.
/// The b-graph is the a-graph relabelled by pi: delta_b(pi(k)) = pi(delta_a(k)).
inline Dfa build_family(const PermutationSpec& spec) {
  const int n = spec.n();
  std::vector<int> da(n), db(n);
  da[0] = 1;
  for (int k = 1; k <= n - 2; ++k) da[k] = k + 1;
  da[n - 1] = 1;
  for (int k = 0; k < n; ++k) db[spec(k)] = spec(da[k]);
  return Dfa(std::move(da), std::move(db));
}

/// Both letters rotate the states; no word synchronizes it.
inline Dfa pure_cycle(int n) {
  std::vector<int> rot(n);
  for (int k = 0; k < n; ++k) rot[k] = (k + 1) % n;
  return Dfa(rot, rot);
}

inline int apply_letter(const Dfa& dfa, int q, Letter l) {
  if (q < 0 || q >= dfa.n()) throw std::out_of_range("state " + std::to_string(q) + " out of range");
  return dfa.delta(l)[q];
}

inline int apply_word(const Dfa& dfa, int q, const Word& w) {
  if (q < 0 || q >= dfa.n()) throw std::out_of_range("state " + std::to_string(q) + " out of range");
  for (Letter l : w.applied()) q = dfa.delta(l)[q];
  return q;
}

namespace detail {
inline StateSet step(const Dfa& dfa, StateSet s, Letter l) {
  StateSet out;
  const auto& d = dfa.delta(l);
  for (int q = 0; q < dfa.n(); ++q)
    if (s.contains(q)) out.members |= std::uint64_t{1} << d[q];
  return out;
}
}  // namespace detail

inline StateSet image(const Dfa& dfa, StateSet s, const Word& w) {
  if (s.empty()) throw std::invalid_argument("image of an empty state set");
  for (Letter l : w.applied()) s = detail::step(dfa, s, l);
  return s;
}

/// Target state if `w` maps every state to the same one.
inline std::optional<int> is_synchronizing(const Dfa& dfa, const Word& w) {
  if (dfa.n() > 64) throw CapacityError("is_synchronizing supports at most 64 states");
  StateSet s = image(dfa, StateSet::full(dfa.n()), w);
  if (s.size() != 1) return std::nullopt;
  return __builtin_ctzll(s.members);
}

inline constexpr int kDefaultSearchBound = 20;

/// Breadth-first search over the power automaton from the full set.
/// Letter a is explored before b, so the result is the lexicographically
/// first shortest word in application order.
inline std::optional<Word> shortest_sync_word(const Dfa& dfa, int max_states = kDefaultSearchBound) {
  const int n = dfa.n();
  if (n > max_states || n > 30)
    throw CapacityError("power-automaton search limited to " + std::to_string(std::min(max_states, 30)) +
                        " states, got " + std::to_string(n));
  const std::uint32_t full = static_cast<std::uint32_t>(StateSet::full(n).members);
  if (n == 1) return Word({}, Order::application);

  constexpr std::uint32_t kUnseen = 0xffffffffU;
  // parent[s] packs (predecessor << 1) | letter.
  std::vector<std::uint32_t> parent(std::size_t{1} << n, kUnseen);
  std::vector<std::uint8_t> via(std::size_t{1} << n, 0);
  parent[full] = full;
  std::deque<std::uint32_t> queue{full};

  while (!queue.empty()) {
    const std::uint32_t cur = queue.front();
    queue.pop_front();
    for (Letter l : {Letter::a, Letter::b}) {
      const auto next = static_cast<std::uint32_t>(detail::step(dfa, StateSet{cur}, l).members);
      if (parent[next] != kUnseen) continue;
      parent[next] = cur;
      via[next] = static_cast<std::uint8_t>(l);
      if (__builtin_popcount(next) == 1) {
        std::vector<Letter> letters;
        for (std::uint32_t s = next; s != full; s = parent[s]) letters.push_back(static_cast<Letter>(via[s]));
        std::reverse(letters.begin(), letters.end());
        return Word(std::move(letters), Order::application);
      }
      queue.push_back(next);
    }
  }
  return std::nullopt;
}

/// (ab)^floor((n-1)/2) a^((n-1) mod 2) in operator order: the lone a, when
/// present, acts first. Synchronizes the basic family to state 1.
inline Word closed_form_word(int n) {
  if (n < 2) throw std::invalid_argument("closed_form_word needs n >= 2");
  std::vector<Letter> letters;
  for (int i = 0; i < (n - 1) / 2; ++i) {
    letters.push_back(Letter::a);
    letters.push_back(Letter::b);
  }
  if ((n - 1) % 2 == 1) letters.push_back(Letter::a);
  return Word(std::move(letters), Order::operator_order);
}

}  // namespace qsync
