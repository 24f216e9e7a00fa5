#include "submon/automata.hpp"

#include <algorithm>
#include <deque>
#include <set>
#include <sstream>

namespace submon {

  ////////////////////////////////////////////////////////////////////////
  // Folding
  ////////////////////////////////////////////////////////////////////////

  namespace {
    struct RawEdge {
      std::size_t from;
      std::size_t to;
      Letter      label;  // always positive
      Letters     annot;  // word over generator indices
      bool        alive;
    };

    struct Folder {
      std::vector<RawEdge>                  edges;
      std::vector<std::vector<std::size_t>> incident;
      std::vector<bool>                     alive_state;

      std::size_t add_state() {
        incident.emplace_back();
        alive_state.push_back(true);
        return incident.size() - 1;
      }

      void add_edge(std::size_t from, Letter x, std::size_t to,
                    Letters annot) {
        if (x < 0) {
          std::swap(from, to);
          x     = -x;
          annot = inverse(annot);
        }
        edges.push_back({from, to, x, std::move(annot), true});
        incident[from].push_back(edges.size() - 1);
        if (to != from) {
          incident[to].push_back(edges.size() - 1);
        }
      }

      // The edge e read starting at s: (signed label, far end, annotation).
      struct Oriented {
        Letter      label;
        std::size_t other;
        Letters     annot;
      };

      std::vector<Oriented> oriented_at(std::size_t s, std::size_t e) const {
        auto const&           E = edges[e];
        std::vector<Oriented> out;
        if (E.from == s) {
          out.push_back({E.label, E.to, E.annot});
        }
        if (E.to == s) {
          out.push_back({-E.label, E.from, inverse(E.annot)});
        }
        return out;
      }

      // Finds two distinct edge-ends at s with the same signed label.
      bool find_fold(std::size_t s, std::size_t& e1, std::size_t& e2,
                     Oriented& o1, Oriented& o2) const {
        std::vector<std::pair<std::size_t, Oriented>> seen;
        for (std::size_t e : incident[s]) {
          if (!edges[e].alive) {
            continue;
          }
          for (auto& o : oriented_at(s, e)) {
            for (auto& [f, p] : seen) {
              if (p.label == o.label && f != e) {
                e1 = f;
                o1 = p;
                e2 = e;
                o2 = o;
                return true;
              }
            }
            seen.emplace_back(e, o);
          }
        }
        return false;
      }

      void kill(std::size_t e) {
        edges[e].alive = false;
      }

      void fold_all(std::size_t base) {
        std::deque<std::size_t> work;
        for (std::size_t s = 0; s < incident.size(); ++s) {
          work.push_back(s);
        }
        while (!work.empty()) {
          std::size_t s = work.front();
          work.pop_front();
          if (!alive_state[s]) {
            continue;
          }
          std::size_t e1, e2;
          Oriented    o1, o2;
          while (alive_state[s] && find_fold(s, e1, e2, o1, o2)) {
            std::size_t keep = o1.other, drop = o2.other;
            if (keep == drop) {
              kill(e2);
              continue;
            }
            if (drop == base) {
              std::swap(keep, drop);
              std::swap(e1, e2);
              std::swap(o1, o2);
            }
            // phi(d) = P(keep) P(drop)^-1 for the vertex potentials P.
            Letters d     = multiply(inverse(o1.annot), o2.annot);
            Letters d_inv = inverse(d);
            kill(e2);
            for (std::size_t f : incident[drop]) {
              auto& F = edges[f];
              if (!F.alive) {
                continue;
              }
              if (F.from == drop) {
                F.annot = multiply(d, F.annot);
                F.from  = keep;
              }
              if (F.to == drop) {
                F.annot = multiply(F.annot, d_inv);
                F.to    = keep;
              }
              incident[keep].push_back(f);
            }
            incident[drop].clear();
            alive_state[drop] = false;
            // de-duplicate incidence of loops
            auto& inc = incident[keep];
            std::sort(inc.begin(), inc.end());
            inc.erase(std::unique(inc.begin(), inc.end()), inc.end());
            work.push_back(keep);
            if (keep != s) {
              work.push_back(s);
            }
          }
        }
      }
    };
  }  // namespace

  StallingsGraph::StallingsGraph(std::size_t                 rank,
                                 std::vector<Letters> const& gens)
      : _rank(rank),
        _gens(),
        _num_states(0),
        _num_edges(0),
        _trans(),
        _annot() {
    for (auto const& g : gens) {
      _gens.push_back(reduce(g));
    }
    Folder F;
    F.add_state();
    for (std::size_t j = 0; j < _gens.size(); ++j) {
      auto const& w = _gens[j];
      if (w.empty()) {
        continue;
      }
      for (Letter x : w) {
        if (gen_of(x) >= _rank) {
          throw PreconditionError("generator letter outside the alphabet");
        }
      }
      std::size_t prev = 0;
      for (std::size_t k = 0; k < w.size(); ++k) {
        bool        last = k + 1 == w.size();
        std::size_t next = last ? 0 : F.add_state();
        Letters     annot;
        if (last) {
          annot.push_back(static_cast<Letter>(j + 1));
        }
        F.add_edge(prev, w[k], next, annot);
        prev = next;
      }
    }
    F.fold_all(0);

    std::vector<long> renum(F.incident.size(), -1);
    renum[0] = 0;
    for (std::size_t s = 1; s < F.incident.size(); ++s) {
      if (F.alive_state[s]) {
        renum[s] = static_cast<long>(_num_states + 1);
        ++_num_states;
      }
    }
    ++_num_states;
    _trans.assign(_num_states * 2 * _rank, -1);
    _annot.assign(_num_states * 2 * _rank, Letters());
    for (auto const& E : F.edges) {
      if (!E.alive) {
        continue;
      }
      ++_num_edges;
      auto p = static_cast<std::size_t>(renum[E.from]);
      auto q = static_cast<std::size_t>(renum[E.to]);
      _trans[slot(p, E.label)]  = static_cast<int>(q);
      _annot[slot(p, E.label)]  = E.annot;
      _trans[slot(q, -E.label)] = static_cast<int>(p);
      _annot[slot(q, -E.label)] = inverse(E.annot);
    }
  }

  int StallingsGraph::transition(std::size_t s, Letter x) const {
    if (gen_of(x) >= _rank || s >= _num_states) {
      return -1;
    }
    return _trans[slot(s, x)];
  }

  std::optional<Letters> StallingsGraph::contains(Letters const& w) const {
    Letters     r = reduce(w);
    std::size_t s = 0;
    Letters     witness;
    for (Letter x : r) {
      if (gen_of(x) >= _rank) {
        return std::nullopt;
      }
      int t = _trans[slot(s, x)];
      if (t < 0) {
        return std::nullopt;
      }
      append_reduced(witness, _annot[slot(s, x)]);
      s = static_cast<std::size_t>(t);
    }
    if (s != 0) {
      return std::nullopt;
    }
    return witness;
  }

  std::string StallingsGraph::to_dot() const {
    std::ostringstream out;
    out << "digraph stallings {\n  0 [shape=doublecircle];\n";
    for (std::size_t s = 0; s < _num_states; ++s) {
      for (std::size_t g = 0; g < _rank; ++g) {
        int t = _trans[slot(s, make_letter(g, 1))];
        if (t >= 0) {
          out << "  " << s << " -> " << t << " [label=\"x" << g << "\"];\n";
        }
      }
    }
    out << "}\n";
    return out.str();
  }

  StallingsGraph build_subgroup_graph(std::vector<Word> const& gens) {
    std::size_t          rank = 0;
    std::vector<Letters> raw;
    AlphabetPtr          alphabet;
    for (auto const& g : gens) {
      if (alphabet && !same_alphabet(alphabet, g.alphabet())) {
        throw PreconditionError("subgroup generators over different "
                                "alphabets");
      }
      alphabet = g.alphabet();
      raw.push_back(g.letters());
    }
    if (alphabet) {
      rank = alphabet->size();
    }
    return StallingsGraph(std::max<std::size_t>(rank, 1), raw);
  }

  SubgroupMembership subgroup_contains(StallingsGraph const& g,
                                       Word const&           w) {
    auto r = g.contains(w.letters());
    if (!r) {
      return {false, {}};
    }
    return {true, *r};
  }

  Letters evaluate_witness(std::vector<Letters> const& gens,
                           Letters const&              witness) {
    Letters out;
    for (Letter x : witness) {
      auto const& g = gens.at(gen_of(x));
      append_reduced(out, x > 0 ? g : inverse(g));
    }
    return out;
  }

  ////////////////////////////////////////////////////////////////////////
  // Saturated acceptors
  ////////////////////////////////////////////////////////////////////////

  namespace {
    std::size_t add_cost(std::size_t a, std::size_t b) {
      if (a == kInfinity || b == kInfinity) {
        return kInfinity;
      }
      return a + b;
    }
  }  // namespace

  SaturatedAcceptor::SaturatedAcceptor(std::size_t num_states)
      : _num_states(num_states),
        _initial(0),
        _final(num_states, false),
        _edges(),
        _eps(),
        _eps_direct(num_states * num_states, kInfinity),
        _saturated(false) {}

  std::size_t SaturatedAcceptor::add_state() {
    std::size_t              n = _num_states + 1;
    std::vector<std::size_t> direct(n * n, kInfinity);
    for (std::size_t p = 0; p < _num_states; ++p) {
      for (std::size_t q = 0; q < _num_states; ++q) {
        direct[p * n + q] = _eps_direct[p * _num_states + q];
      }
    }
    _eps_direct = std::move(direct);
    _final.push_back(false);
    _saturated = false;
    return _num_states++;
  }

  void SaturatedAcceptor::add_edge(std::size_t from, Letter x,
                                   std::size_t to, std::size_t cost) {
    if (from >= _num_states || to >= _num_states) {
      throw PreconditionError("edge endpoint out of range");
    }
    _saturated = false;
    if (x == 0) {
      auto& c = _eps_direct[from * _num_states + to];
      c       = std::min(c, cost);
      return;
    }
    _edges.push_back({from, x, to, cost});
  }

  void SaturatedAcceptor::set_final(std::size_t s, bool value) {
    _final.at(s) = value;
  }

  void SaturatedAcceptor::close_epsilon() {
    std::size_t const n = _num_states;
    _eps                = _eps_direct;
    for (std::size_t p = 0; p < n; ++p) {
      _eps[p * n + p] = 0;
    }
    for (std::size_t k = 0; k < n; ++k) {
      for (std::size_t i = 0; i < n; ++i) {
        std::size_t ik = _eps[i * n + k];
        if (ik == kInfinity) {
          continue;
        }
        for (std::size_t j = 0; j < n; ++j) {
          std::size_t c = add_cost(ik, _eps[k * n + j]);
          if (c < _eps[i * n + j]) {
            _eps[i * n + j] = c;
          }
        }
      }
    }
  }

  void SaturatedAcceptor::saturate() {
    std::size_t const n = _num_states;
    bool              changed = true;
    while (changed) {
      changed = false;
      close_epsilon();
      for (auto const& a : _edges) {
        for (auto const& b : _edges) {
          if (b.letter != -a.letter) {
            continue;
          }
          std::size_t mid = _eps[a.to * n + b.from];
          if (mid == kInfinity) {
            continue;
          }
          std::size_t c = a.cost + mid + b.cost;
          auto&       d = _eps_direct[a.from * n + b.to];
          if (c < d && c < _eps[a.from * n + b.to]) {
            d       = c;
            changed = true;
          }
        }
      }
    }
    close_epsilon();
    _saturated = true;
  }

  std::size_t SaturatedAcceptor::min_cost(Letters const& w) const {
    if (!_saturated) {
      throw PreconditionError("acceptor queried before saturation");
    }
    std::size_t const        n = _num_states;
    std::vector<std::size_t> dist(n, kInfinity), next(n);
    for (std::size_t q = 0; q < n; ++q) {
      dist[q] = _eps[_initial * n + q];
    }
    for (Letter x : w) {
      std::fill(next.begin(), next.end(), kInfinity);
      for (auto const& e : _edges) {
        if (e.letter == x && dist[e.from] != kInfinity) {
          next[e.to] = std::min(next[e.to], dist[e.from] + e.cost);
        }
      }
      for (std::size_t s = 0; s < n; ++s) {
        std::size_t best = kInfinity;
        for (std::size_t q = 0; q < n; ++q) {
          best = std::min(best, add_cost(next[q], _eps[q * n + s]));
        }
        dist[s] = best;
      }
    }
    std::size_t best = kInfinity;
    for (std::size_t s = 0; s < n; ++s) {
      if (_final[s]) {
        best = std::min(best, dist[s]);
      }
    }
    return best;
  }

  SaturatedAcceptor star_acceptor(std::vector<Letters> const& W) {
    SaturatedAcceptor A(1);
    A.set_initial(0);
    A.set_final(0);
    for (auto const& raw : W) {
      Letters w = reduce(raw);
      if (w.empty()) {
        continue;
      }
      std::size_t prev = 0;
      for (std::size_t k = 0; k < w.size(); ++k) {
        std::size_t next = k + 1 == w.size() ? 0 : A.add_state();
        A.add_edge(prev, w[k], next, k == 0 ? 1 : 0);
        prev = next;
      }
    }
    A.saturate();
    return A;
  }

  namespace {
    std::vector<Letters> raw_words(std::vector<Word> const& W,
                                   AlphabetPtr const&       alphabet) {
      std::vector<Letters> out;
      for (auto const& u : W) {
        if (alphabet && !same_alphabet(u.alphabet(), alphabet)) {
          throw PreconditionError("words over different alphabets");
        }
        out.push_back(u.letters());
      }
      return out;
    }
  }  // namespace

  bool benois_member(std::vector<Word> const& W, Word const& w) {
    return min_generator_length(W, w) != kInfinity;
  }

  std::size_t min_generator_length(std::vector<Word> const& W,
                                   Word const&              w) {
    auto A = star_acceptor(raw_words(W, w.alphabet()));
    return A.min_cost(reduce(w.letters()));
  }

  ////////////////////////////////////////////////////////////////////////
  // Codes
  ////////////////////////////////////////////////////////////////////////

  namespace {
    bool has_prefix(Letters const& w, Letters const& p) {
      return p.size() <= w.size() && std::equal(p.begin(), p.end(), w.begin());
    }

    Letters tail(Letters const& w, std::size_t k) {
      return Letters(w.begin() + static_cast<std::ptrdiff_t>(k), w.end());
    }
  }  // namespace

  bool is_code(std::vector<Letters> const& W) {
    std::set<Letters> C(W.begin(), W.end());
    if (C.size() != W.size() || C.count(Letters{})) {
      return false;
    }
    std::set<Letters> S;
    for (auto const& u : C) {
      for (auto const& v : C) {
        if (u != v && has_prefix(v, u)) {
          S.insert(tail(v, u.size()));
        }
      }
    }
    std::set<std::set<Letters>> seen;
    while (!S.empty()) {
      if (S.count(Letters{})) {
        return false;
      }
      if (!seen.insert(S).second) {
        return true;
      }
      std::set<Letters> next;
      for (auto const& t : S) {
        for (auto const& u : C) {
          if (has_prefix(t, u)) {
            next.insert(tail(t, u.size()));
          }
          if (has_prefix(u, t)) {
            next.insert(tail(u, t.size()));
          }
        }
      }
      S = std::move(next);
    }
    return true;
  }

  bool is_code(std::vector<Word> const& W) {
    return is_code(raw_words(W, nullptr));
  }

  bool no_cancellation(std::vector<Letters> const& W) {
    for (auto const& u : W) {
      if (u.empty() || !is_reduced(u)) {
        return false;
      }
    }
    for (auto const& u : W) {
      for (auto const& v : W) {
        if (u.back() == -v.front()) {
          return false;
        }
      }
    }
    return true;
  }

  bool no_cancellation(std::vector<Word> const& W) {
    return no_cancellation(raw_words(W, nullptr));
  }

  std::vector<std::vector<std::size_t>> literal_factorizations(
      std::vector<Letters> const& W, Letters const& w, std::size_t limit) {
    // reach[i]: w[i..] can be completed.
    std::size_t const n = w.size();
    std::vector<bool> reach(n + 1, false);
    reach[n] = true;
    for (std::size_t i = n; i-- > 0;) {
      for (auto const& u : W) {
        if (!u.empty() && i + u.size() <= n && reach[i + u.size()]
            && std::equal(u.begin(), u.end(),
                          w.begin() + static_cast<std::ptrdiff_t>(i))) {
          reach[i] = true;
          break;
        }
      }
    }
    std::vector<std::vector<std::size_t>> out;
    if (!reach[0]) {
      return out;
    }
    std::vector<std::size_t> stack;
    auto rec = [&](auto&& self, std::size_t i) -> void {
      if (out.size() >= limit) {
        return;
      }
      if (i == n) {
        out.push_back(stack);
        return;
      }
      for (std::size_t j = 0; j < W.size(); ++j) {
        auto const& u = W[j];
        if (!u.empty() && i + u.size() <= n && reach[i + u.size()]
            && std::equal(u.begin(), u.end(),
                          w.begin() + static_cast<std::ptrdiff_t>(i))) {
          stack.push_back(j);
          self(self, i + u.size());
          stack.pop_back();
        }
      }
    };
    rec(rec, 0);
    return out;
  }

}  // namespace submon
