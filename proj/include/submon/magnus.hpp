#ifndef SUBMON_MAGNUS_HPP_
#define SUBMON_MAGNUS_HPP_

#include <cstddef>
#include <map>
#include <memory>
#include <mutex>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "submon/automata.hpp"
#include "submon/words.hpp"

namespace submon {

  // A letter x_i^{+-1} of the subscripted alphabet; `gen` indexes the
  // original alphabet (never the stable letter).
  struct OmegaLetter {
    std::size_t gen;
    long        sub;
    int         sign;

    bool operator==(OmegaLetter const& o) const {
      return gen == o.gen && sub == o.sub && sign == o.sign;
    }
    bool operator!=(OmegaLetter const& o) const {
      return !(*this == o);
    }
  };

  using OmegaWord = std::vector<OmegaLetter>;
  // (generator, subscript)
  using OmegaGen = std::pair<std::size_t, long>;

  OmegaWord   omega_reduce(OmegaWord const& w);
  OmegaWord   omega_inverse(OmegaWord const& w);
  OmegaWord   omega_multiply(OmegaWord const& u, OmegaWord const& v);
  OmegaWord   shift(OmegaWord const& w, long i);
  std::string format_omega(Alphabet const& alphabet, OmegaWord const& w);
  std::string format_omega_gen(Alphabet const& alphabet, OmegaGen const& g);
  // Parses "a[-1]' a[0] b[2]".
  OmegaWord parse_omega(Alphabet const& alphabet, std::string const& text);
  // x_i = t^i x t^-i: turn an omega word back into an ordinary word.
  Letters omega_to_letters(OmegaWord const& w, std::size_t stable);

  ////////////////////////////////////////////////////////////////////////
  // Magnus rewriting
  ////////////////////////////////////////////////////////////////////////

  struct GeneratorRange {
    std::size_t gen;
    long        min;
    long        max;
    std::size_t count_at_min;
    std::size_t count_at_max;

    bool unique_min() const noexcept {
      return count_at_min == 1;
    }
    bool unique_max() const noexcept {
      return count_at_max == 1;
    }
  };

  struct MagnusReport {
    AlphabetPtr                 alphabet;
    std::size_t                 stable;
    OmegaWord                   word;
    std::vector<GeneratorRange> ranges;
    // First generator (alphabet order) with both extremes unique.
    std::optional<std::size_t> chosen;

    bool condition() const noexcept {
      return chosen.has_value();
    }
    GeneratorRange const& range_of(std::size_t gen) const;
    std::string           to_text() const;
  };

  // Requires t-exponent sum 0.
  MagnusReport magnus_rewrite(Word const& w, std::string_view t);
  MagnusReport magnus_rewrite(AlphabetPtr const& alphabet, Letters const& w,
                              std::size_t t);

  ////////////////////////////////////////////////////////////////////////
  // Interval presentations and their free bases
  ////////////////////////////////////////////////////////////////////////

  struct IntervalPresentation {
    AlphabetPtr           alphabet;
    std::size_t           stable;
    long                  n;
    long                  m;
    MagnusReport          rewritten;  // the relator, rewritten
    std::vector<OmegaGen> generators;  // A_[n,m], sorted
    std::vector<OmegaWord> relators;   // sigma_i(w), i = n..m
    // x_i with both x_i and x_{i+1} in A_[n,m]: t x_i t^-1 = x_{i+1}.
    std::vector<OmegaGen> conjugations;

    std::size_t num_relations() const noexcept {
      return relators.size() + conjugations.size();
    }
    bool        contains(OmegaGen const& g) const;
    std::string to_text() const;
  };

  // Letters of sigma_i(w) for n <= i <= m.
  std::vector<OmegaGen> interval_letters(OmegaWord const& relator, long n,
                                         long m);

  IntervalPresentation interval_presentation(Presentation const& p,
                                             std::string_view t, long n,
                                             long m);

  struct FreeBasis {
    std::vector<OmegaGen> basis;
    std::vector<OmegaGen> eliminated;
    // Every generator of A_[n,m] as a word over the basis (basis[k] is
    // the letter k+1).
    std::map<OmegaGen, Letters> expansion;
    std::size_t                 chosen;

    std::optional<std::size_t> basis_index(OmegaGen const& g) const;
    Letters                    expand(OmegaWord const& w) const;
    std::string format(Alphabet const& alphabet, Letters const& w) const;
  };

  FreeBasis eliminate_to_basis(IntervalPresentation const& ip);

  struct HnnData {
    IntervalPresentation  ip;
    FreeBasis             base;
    std::vector<OmegaGen> p_letters;  // A_[n,m-1]
    std::vector<OmegaGen> q_letters;  // A_[n+1,m]; phi(p_letters[k])
    std::vector<Letters>  p_gens;     // as basis words
    std::vector<Letters>  q_gens;
    std::shared_ptr<StallingsGraph const> p_graph;
    std::shared_ptr<StallingsGraph const> q_graph;

    // phi on an element of P given as basis word; nullopt if not in P.
    std::optional<Letters> phi(Letters const& p) const;
    std::optional<Letters> phi_inverse(Letters const& q) const;
  };

  HnnData hnn_data(IntervalPresentation const& ip);

  ////////////////////////////////////////////////////////////////////////
  // Word problems
  ////////////////////////////////////////////////////////////////////////

  // Britton reduction in the HNN decomposition of a one-relator group
  // whose relator satisfies the max/min condition with respect to t.
  class BrittonSolver {
   public:
    BrittonSolver(Presentation const& p, std::string_view t);
    BrittonSolver(Presentation const& p, std::size_t t);

    bool is_trivial(Letters const& w) const;

    // Britton-reduced form: base segments (basis words) and the
    // exponents of the t-letters between them.
    struct Reduced {
      std::vector<Letters> segments;
      std::vector<int>     stable;
    };
    Reduced reduce(Letters const& w) const;

    HnnData const& data() const noexcept {
      return _data;
    }
    std::size_t stable() const noexcept {
      return _stable;
    }

   private:
    void init(Presentation const& p, std::size_t t);

    std::size_t          _stable;
    AlphabetPtr          _alphabet;
    HnnData              _data;
    std::vector<Letters> _letter_image;  // generator -> basis word
  };

  bool britton_word_problem(Presentation const& p, std::string_view t,
                            Word const& w);

  // Normal forms t^j u with u a reduced word in the free fibre, over the
  // basis {x_i : x not chosen} U {c_min, ..., c_{max-1}} where c is the
  // chosen generator. Equal elements give equal normal forms.
  class FiberNormalForm {
   public:
    FiberNormalForm(Presentation const& p, std::string_view t);
    FiberNormalForm(Presentation const& p, std::size_t t);

    std::pair<long, OmegaWord> normal_form(Letters const& w) const;
    std::string                key(Letters const& w) const;
    bool                       is_trivial(Letters const& w) const;

    // Rewrite an omega word into the fibre basis.
    OmegaWord to_basis(OmegaWord const& w) const;
    // The automorphism induced by conjugation, x_i -> x_{i+1}, applied
    // to a basis word (the result is again in the basis).
    OmegaWord shift_in_fibre(OmegaWord const& u, long k) const;

    std::size_t stable() const noexcept {
      return _stable;
    }
    std::size_t chosen() const noexcept {
      return _chosen;
    }
    MagnusReport const& relator_report() const noexcept {
      return _report;
    }
    AlphabetPtr const& alphabet() const noexcept {
      return _alphabet;
    }
    // Basis letters of the chosen generator: c_min .. c_{max-1}.
    long chosen_lo() const noexcept {
      return _lo;
    }
    long chosen_hi() const noexcept {
      return _hi;
    }

   private:
    void             init(Presentation const& p, std::size_t t);
    OmegaWord const& expansion(long k) const;

    AlphabetPtr  _alphabet;
    std::size_t  _stable;
    MagnusReport _report;
    std::size_t  _chosen;
    long         _lo, _hi;  // chosen range [min, max-1]
    long         _min, _max;
    mutable std::mutex                    _mutex;
    mutable std::map<long, OmegaWord>     _cache;
  };

  // (j, u) with w = t^j u, u in the fibre basis.
  std::pair<long, OmegaWord> fbc_normal_form(Presentation const& p,
                                             std::string_view t,
                                             Word const&      w);

  ////////////////////////////////////////////////////////////////////////
  // Substitutions
  ////////////////////////////////////////////////////////////////////////

  struct Substitution {
    Presentation presentation;
    GroupHom     forward;   // old alphabet -> new alphabet
    GroupHom     backward;  // new alphabet -> old alphabet
  };

  // Replace generator `old` by `expr`, a word in the remaining
  // generators and the fresh generator `fresh` (which takes old's
  // position and must occur exactly once in expr). Relators are
  // cyclically reduced afterwards.
  Substitution substitute_generator(Presentation const& p,
                                    std::string_view    old,
                                    std::string_view    fresh,
                                    std::string_view    expr);

}  // namespace submon

#endif  // SUBMON_MAGNUS_HPP_
