// Brute-force reference implementations used by the test suites. They
// are deliberately naive and share no code with the library beyond the
// free-group word primitives.

#ifndef SUBMON_TESTS_ORACLES_HPP_
#define SUBMON_TESTS_ORACLES_HPP_

#include <cstddef>
#include <cstdint>
#include <unordered_map>
#include <functional>
#include <algorithm>
#include <optional>
#include <random>
#include <set>
#include <string>
#include <vector>

#include "submon/engines.hpp"
#include "submon/words.hpp"

namespace oracle {

  using submon::Letter;
  using submon::Letters;

  // Letter-by-letter free reduction with a stack, written independently
  // of submon::reduce.
  inline Letters reduce(Letters const& w) {
    Letters out;
    for (Letter x : w) {
      if (!out.empty() && out.back() == -x) {
        out.pop_back();
      } else {
        out.push_back(x);
      }
    }
    return out;
  }

  inline Letters concat(Letters u, Letters const& v) {
    u.insert(u.end(), v.begin(), v.end());
    return u;
  }

  inline Letters invert(Letters const& w) {
    Letters out(w.rbegin(), w.rend());
    for (Letter& x : out) {
      x = -x;
    }
    return out;
  }

  // Every reduced word of length <= radius over `rank` generators.
  inline std::vector<Letters> ball(std::size_t rank, std::size_t radius) {
    std::vector<Letters> out{{}};
    std::vector<Letters> layer{{}};
    for (std::size_t r = 0; r < radius; ++r) {
      std::vector<Letters> next;
      for (auto const& w : layer) {
        for (std::size_t g = 1; g <= rank; ++g) {
          for (Letter x : {static_cast<Letter>(g), -static_cast<Letter>(g)}) {
            if (!w.empty() && w.back() == -x) {
              continue;
            }
            Letters v = w;
            v.push_back(x);
            next.push_back(v);
          }
        }
      }
      out.insert(out.end(), next.begin(), next.end());
      layer = std::move(next);
    }
    return out;
  }

  inline Letters random_word(std::mt19937_64& rng, std::size_t rank,
                             std::size_t max_len, bool reduced = false) {
    std::uniform_int_distribution<std::size_t> len(0, max_len);
    std::uniform_int_distribution<int>         g(1, static_cast<int>(rank));
    std::uniform_int_distribution<int>         s(0, 1);
    Letters                                    w;
    std::size_t                                n = len(rng);
    while (w.size() < n) {
      Letter x = g(rng) * (s(rng) ? 1 : -1);
      if (reduced && !w.empty() && w.back() == -x) {
        continue;
      }
      w.push_back(x);
    }
    return w;
  }

  // Fewest factors from W whose free product is w, searching products of
  // at most k factors; nullopt when none.
  inline std::optional<std::size_t> free_min_factors(
      std::vector<Letters> const& W, Letters const& w, std::size_t k) {
    Letters const   target = reduce(w);
    std::set<Letters> seen{Letters{}};
    std::vector<Letters> layer{Letters{}};
    if (target.empty()) {
      return 0;
    }
    for (std::size_t d = 1; d <= k; ++d) {
      std::vector<Letters> next;
      for (auto const& p : layer) {
        for (auto const& x : W) {
          Letters q = reduce(concat(p, x));
          if (q == target) {
            return d;
          }
          if (seen.insert(q).second) {
            next.push_back(std::move(q));
          }
        }
      }
      layer = std::move(next);
      if (layer.empty()) {
        break;
      }
    }
    return std::nullopt;
  }

  using KeyFn = std::function<std::string(Letters const&)>;

  // Breadth-first positive search in a group with canonical keys: is w a
  // product of at most k factors from W? Returns the factor sequence.
  inline std::optional<std::vector<std::size_t>> keyed_search(
      KeyFn const& key, std::vector<Letters> const& W, Letters const& w,
      std::size_t k) {
    auto const target = key(w);
    struct Node {
      Letters                  word;
      std::vector<std::size_t> path;
    };
    std::set<std::string> seen{key({})};
    std::vector<Node>     layer{{{}, {}}};
    if (target == key({})) {
      return std::vector<std::size_t>{};
    }
    for (std::size_t d = 1; d <= k && !layer.empty(); ++d) {
      std::vector<Node> next;
      for (auto const& node : layer) {
        for (std::size_t i = 0; i < W.size(); ++i) {
          Node n{reduce(concat(node.word, W[i])), node.path};
          n.path.push_back(i);
          auto kk = key(n.word);
          if (kk == target) {
            return n.path;
          }
          if (seen.insert(kk).second) {
            next.push_back(std::move(n));
          }
        }
      }
      layer = std::move(next);
    }
    return std::nullopt;
  }

  inline std::optional<std::vector<std::size_t>> keyed_search(
      submon::WordProblemEngine const& e, std::vector<Letters> const& W,
      Letters const& w, std::size_t k) {
    return keyed_search([&e](Letters const& u) { return *e.key(u); }, W, w,
                        k);
  }

  // The same without keys: equality tested by the engine on p w^-1.
  inline std::optional<std::vector<std::size_t>> unkeyed_search(
      submon::WordProblemEngine const& e, std::vector<Letters> const& W,
      Letters const& w, std::size_t k) {
    Letters const winv = invert(w);
    std::function<bool(Letters const&, std::size_t,
                       std::vector<std::size_t>&)>
        go = [&](Letters const& p, std::size_t left,
                 std::vector<std::size_t>& path) {
          if (e.is_trivial(reduce(concat(p, winv)))) {
            return true;
          }
          if (left == 0) {
            return false;
          }
          for (std::size_t i = 0; i < W.size(); ++i) {
            path.push_back(i);
            if (go(reduce(concat(p, W[i])), left - 1, path)) {
              return true;
            }
            path.pop_back();
          }
          return false;
        };
    std::vector<std::size_t> path;
    if (go({}, k, path)) {
      return path;
    }
    return std::nullopt;
  }

  inline Letters evaluate(std::vector<Letters> const&     W,
                          std::vector<std::size_t> const& path) {
    Letters out;
    for (auto i : path) {
      out = concat(out, W.at(i));
    }
    return reduce(out);
  }

  // All decompositions of a literal string into pieces from W (counted,
  // capped).
  inline std::size_t literal_parses(std::vector<Letters> const& W,
                                    Letters const& w, std::size_t cap = 2) {
    std::vector<std::size_t> ways(w.size() + 1, 0);
    ways[0] = 1;
    for (std::size_t i = 0; i < w.size(); ++i) {
      if (ways[i] == 0) {
        continue;
      }
      for (auto const& x : W) {
        if (!x.empty() && i + x.size() <= w.size()
            && std::equal(x.begin(), x.end(), w.begin() + static_cast<long>(i))) {
          ways[i + x.size()] = std::min(cap, ways[i + x.size()] + ways[i]);
        }
      }
    }
    return ways[w.size()];
  }

  // Leftmost rewriting to an irreducible word; "<budget>" when `steps`
  // applications do not suffice.
  inline std::string rewrite_nf(
      std::vector<std::pair<std::string, std::string>> const& rules,
      std::string w, std::size_t steps = 100000) {
    for (std::size_t s = 0; s < steps; ++s) {
      bool changed = false;
      for (std::size_t pos = 0; pos < w.size() && !changed; ++pos) {
        for (auto const& [l, r] : rules) {
          if (w.compare(pos, l.size(), l) == 0) {
            w.replace(pos, l.size(), r);
            changed = true;
            break;
          }
        }
      }
      if (!changed) {
        return w;
      }
    }
    return "<budget>";
  }

  // Critical pairs (overlaps and inclusions of left sides) whose two
  // descendants do not reach the same irreducible word.
  inline std::size_t unjoinable_overlaps(
      std::vector<std::pair<std::string, std::string>> const& rules) {
    std::size_t bad = 0;
    for (auto const& [l1, r1] : rules) {
      for (auto const& [l2, r2] : rules) {
        // proper overlaps: suffix of l1 equals prefix of l2
        for (std::size_t k = 1; k < l1.size() && k <= l2.size(); ++k) {
          if (l1.compare(l1.size() - k, k, l2, 0, k) != 0) {
            continue;
          }
          std::string word  = l1 + l2.substr(k);
          std::string left  = r1 + l2.substr(k);
          std::string right = l1.substr(0, l1.size() - k) + r2;
          if (rewrite_nf(rules, left) != rewrite_nf(rules, right)) {
            ++bad;
          }
        }
        // inclusions: l2 strictly inside l1
        for (std::size_t p = 0;
             l2.size() < l1.size() && p + l2.size() <= l1.size(); ++p) {
          if (l1.compare(p, l2.size(), l2) != 0) {
            continue;
          }
          std::string right = l1.substr(0, p) + r2 + l1.substr(p + l2.size());
          if (rewrite_nf(rules, r1) != rewrite_nf(rules, right)) {
            ++bad;
          }
        }
      }
    }
    return bad;
  }

  // The complete system for BS(m,n), 1 <= m < n, written out by hand:
  // positive variant, over the symbols a A t T.
  inline std::vector<std::pair<std::string, std::string>> bs_rules(long m,
                                                                   long n) {
    auto rep = [](char c, long k) {
      return std::string(static_cast<std::size_t>(k), c);
    };
    return {{"aA", ""},
            {"Aa", ""},
            {"tT", ""},
            {"Tt", ""},
            {rep('a', n) + "t", "t" + rep('a', m)},
            {"At", rep('a', n - 1) + "t" + rep('A', m)},
            {rep('a', m) + "T", "T" + rep('a', n)},
            {"AT", rep('a', m - 1) + "T" + rep('A', n)}};
  }

  // Letters over <a, t> (a = 1, t = 2) as a string of a A t T.
  inline std::string bs_string(Letters const& w) {
    std::string out;
    for (Letter x : w) {
      out += x == 1 ? 'a' : x == -1 ? 'A' : x == 2 ? 't' : 'T';
    }
    return out;
  }

  // Words over at most two generators packed into 64 bits: a leading 1
  // followed by two bits per letter. Lengths up to 31.
  inline std::uint64_t pack2(Letters const& w) {
    std::uint64_t code = 1;
    for (Letter x : w) {
      std::uint64_t v = x == 1 ? 0 : x == -1 ? 1 : x == 2 ? 2 : 3;
      code            = (code << 2) | v;
    }
    return code;
  }

  // First depth at which each reduced word appears as a product of
  // elements of W, over rank <= 2. Intermediate products longer than
  // `cap` are discarded, so depths are upper bounds in general and exact
  // when some shortest factorization stays inside the cap.
  inline std::unordered_map<std::uint64_t, std::size_t> factor_depths(
      std::vector<Letters> const& W, std::size_t cap, std::size_t max_depth) {
    std::unordered_map<std::uint64_t, std::size_t> depth{{pack2({}), 0}};
    std::vector<Letters>                             layer{{}};
    for (std::size_t d = 1; d <= max_depth && !layer.empty(); ++d) {
      std::vector<Letters> next;
      for (auto const& p : layer) {
        for (auto const& x : W) {
          Letters q = reduce(concat(p, x));
          if (q.size() <= cap && depth.emplace(pack2(q), d).second) {
            next.push_back(std::move(q));
          }
        }
      }
      layer = std::move(next);
    }
    return depth;
  }

}  // namespace oracle

#endif  // SUBMON_TESTS_ORACLES_HPP_
