#ifndef SUBMON_AUTOMATA_HPP_
#define SUBMON_AUTOMATA_HPP_

#include <cstddef>
#include <cstdint>
#include <limits>
#include <optional>
#include <string>
#include <vector>

#include "submon/words.hpp"

namespace submon {

  ////////////////////////////////////////////////////////////////////////
  // Stallings graphs
  ////////////////////////////////////////////////////////////////////////

  // Folded graph of a finitely generated subgroup of a free group. Each
  // edge carries, besides its letter, a word in the original generators
  // (generator j is the letter j+1) so that membership comes with an
  // explicit product of generators.
  class StallingsGraph {
   public:
    // `rank` is the size of the ambient free basis.
    StallingsGraph(std::size_t rank, std::vector<Letters> const& gens);

    std::size_t num_states() const noexcept {
      return _num_states;
    }
    std::size_t num_edges() const noexcept {
      return _num_edges;
    }
    std::size_t rank_of_subgroup() const noexcept {
      return _num_edges + 1 - _num_states;
    }
    std::size_t alphabet_rank() const noexcept {
      return _rank;
    }
    std::vector<Letters> const& generators() const noexcept {
      return _gens;
    }

    // Target state of the transition labelled x out of state s, or -1.
    int transition(std::size_t s, Letter x) const;

    // Returns a witness: a freely reduced word over the generators
    // (generator j as letter j+1, inverse as -(j+1)) whose evaluation is
    // w, or nullopt when w is not in the subgroup.
    std::optional<Letters> contains(Letters const& w) const;

    std::string to_dot() const;

   private:
    std::size_t slot(std::size_t s, Letter x) const {
      std::size_t g = gen_of(x);
      return s * 2 * _rank + 2 * g + (x > 0 ? 0 : 1);
    }

    std::size_t          _rank;
    std::vector<Letters> _gens;
    std::size_t          _num_states;
    std::size_t          _num_edges;
    std::vector<int>     _trans;
    std::vector<Letters> _annot;
  };

  StallingsGraph build_subgroup_graph(std::vector<Word> const& gens);

  struct SubgroupMembership {
    bool contained;
    // Product of generators (j+1 / -(j+1)) equal to the query; empty
    // when not contained.
    Letters witness;
  };

  SubgroupMembership subgroup_contains(StallingsGraph const& g,
                                       Word const&           w);

  // Evaluate a word over generator indices back into the free group.
  Letters evaluate_witness(std::vector<Letters> const& gens,
                           Letters const&              witness);

  ////////////////////////////////////////////////////////////////////////
  // Weighted Benois saturation
  ////////////////////////////////////////////////////////////////////////

  inline constexpr std::size_t kInfinity
      = std::numeric_limits<std::size_t>::max();

  // Finite acceptor over signed letters; every edge has a nonnegative
  // cost. `saturate()` closes it under cancellation shortcuts: an
  // epsilon edge p -> s whose cost is the cheapest p -x-> . -eps*-> .
  // -x^-1-> s detour.
  class SaturatedAcceptor {
   public:
    struct Edge {
      std::size_t from;
      Letter      letter;
      std::size_t to;
      std::size_t cost;
    };

    explicit SaturatedAcceptor(std::size_t num_states = 1);

    std::size_t add_state();
    void        add_edge(std::size_t from, Letter x, std::size_t to,
                         std::size_t cost = 0);
    void        set_initial(std::size_t s) {
      _initial = s;
    }
    void set_final(std::size_t s, bool value = true);

    // Runs the min-plus fixpoint; idempotent.
    void saturate();
    bool saturated() const noexcept {
      return _saturated;
    }

    // Cheapest accepting path reading the reduced word w (kInfinity when
    // none). Requires saturate() to have been called.
    std::size_t min_cost(Letters const& w) const;
    bool        accepts(Letters const& w) const {
      return min_cost(w) != kInfinity;
    }

    std::size_t num_states() const noexcept {
      return _num_states;
    }
    std::vector<Edge> const& edges() const noexcept {
      return _edges;
    }
    // Cheapest epsilon path p -> q after saturation.
    std::size_t epsilon_cost(std::size_t p, std::size_t q) const {
      return _eps[p * _num_states + q];
    }

   private:
    void close_epsilon();

    std::size_t              _num_states;
    std::size_t              _initial;
    std::vector<bool>        _final;
    std::vector<Edge>        _edges;
    std::vector<std::size_t> _eps;  // all-pairs closure, row-major
    std::vector<std::size_t> _eps_direct;
    bool                     _saturated;
  };

  // Acceptor for W*: one petal per generator, the petal's first letter
  // costing 1. Saturated on return.
  SaturatedAcceptor star_acceptor(std::vector<Letters> const& W);

  bool        benois_member(std::vector<Word> const& W, Word const& w);
  std::size_t min_generator_length(std::vector<Word> const& W,
                                   Word const&              w);

  ////////////////////////////////////////////////////////////////////////
  // Code tests (words as literal strings over the signed alphabet)
  ////////////////////////////////////////////////////////////////////////

  // Sardinas-Patterson unique decipherability.
  bool is_code(std::vector<Letters> const& W);
  bool is_code(std::vector<Word> const& W);

  // No last letter of one generator is inverse to the first letter of
  // another (or the same) generator.
  bool no_cancellation(std::vector<Letters> const& W);
  bool no_cancellation(std::vector<Word> const& W);

  // All ways of writing w literally as a concatenation of words from W
  // (each as a list of indices), at most `limit` of them.
  std::vector<std::vector<std::size_t>> literal_factorizations(
      std::vector<Letters> const& W, Letters const& w,
      std::size_t limit = 1);

}  // namespace submon

#endif  // SUBMON_AUTOMATA_HPP_
