#ifndef SUBMON_ENGINES_HPP_
#define SUBMON_ENGINES_HPP_

#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "submon/magnus.hpp"
#include "submon/rewrite.hpp"
#include "submon/words.hpp"

namespace submon {

  // A solution to the word problem of a fixed group, on words over the
  // group's alphabet. Engines are immutable after construction and may
  // be shared between threads.
  class WordProblemEngine {
   public:
    virtual ~WordProblemEngine() = default;

    virtual std::string name() const                      = 0;
    virtual bool        is_trivial(Letters const& w) const = 0;

    // A string that agrees on two words exactly when they are equal in
    // the group, for engines that have canonical forms.
    virtual std::optional<std::string> key(Letters const&) const {
      return std::nullopt;
    }
    virtual bool has_key() const {
      return false;
    }

    bool equal(Letters const& u, Letters const& v) const;
  };

  using EnginePtr = std::shared_ptr<WordProblemEngine const>;

  class FreeEngine : public WordProblemEngine {
   public:
    std::string name() const override {
      return "free reduction";
    }
    bool is_trivial(Letters const& w) const override {
      return reduce(w).empty();
    }
    std::optional<std::string> key(Letters const& w) const override;
    bool                       has_key() const override {
      return true;
    }
  };

  // Britton reduction for equality, fibre normal forms for keys.
  class BrittonEngine : public WordProblemEngine {
   public:
    BrittonEngine(Presentation const& p, std::size_t t);

    std::string name() const override;
    bool        is_trivial(Letters const& w) const override {
      return _britton.is_trivial(w);
    }
    std::optional<std::string> key(Letters const& w) const override {
      return _fibre.key(w);
    }
    bool has_key() const override {
      return true;
    }

    BrittonSolver const& britton() const noexcept {
      return _britton;
    }
    FiberNormalForm const& fibre() const noexcept {
      return _fibre;
    }

   private:
    std::string     _stable_name;
    BrittonSolver   _britton;
    FiberNormalForm _fibre;
  };

  class DehnEngine : public WordProblemEngine {
   public:
    explicit DehnEngine(Presentation const& p) : _dehn(p) {}

    std::string name() const override {
      return "Dehn algorithm";
    }
    bool is_trivial(Letters const& w) const override {
      return _dehn.is_trivial(w);
    }

   private:
    DehnSolver _dehn;
  };

  // BS(m,n) = <a,t | t a^m t^-1 = a^n> as an HNN extension of <a>, with
  // Britton reduction and coset normal forms a^k0 t^e1 a^k1 ... where the
  // power before t lies in [0,|n|) and the power before t^-1 in [0,|m|).
  // Generator 0 is a, generator 1 is t.
  class BsEngine : public WordProblemEngine {
   public:
    BsEngine(long m, long n);

    std::string name() const override;
    bool        is_trivial(Letters const& w) const override;
    std::optional<std::string> key(Letters const& w) const override;
    bool                       has_key() const override {
      return true;
    }

    // Normal form as (a-powers, t-exponents); powers.size() equals
    // stable.size() + 1.
    struct NormalForm {
      std::vector<long> powers;
      std::vector<int>  stable;
    };
    NormalForm normal_form(Letters const& w) const;
    Letters    to_letters(NormalForm const& nf) const;

    long m() const noexcept {
      return _m;
    }
    long n() const noexcept {
      return _n;
    }

   private:
    long _m, _n;
  };

  // Engine on another presentation, reached through an isomorphism.
  class MappedEngine : public WordProblemEngine {
   public:
    MappedEngine(GroupHom iso, EnginePtr inner)
        : _iso(std::move(iso)), _inner(std::move(inner)) {}

    std::string name() const override {
      return _inner->name() + " after substitution";
    }
    bool is_trivial(Letters const& w) const override {
      return _inner->is_trivial(_iso.apply(w));
    }
    std::optional<std::string> key(Letters const& w) const override {
      return _inner->key(_iso.apply(w));
    }
    bool has_key() const override {
      return _inner->has_key();
    }

   private:
    GroupHom  _iso;
    EnginePtr _inner;
  };

  // The first generator t with zero exponent sum in the relator whose
  // Magnus rewriting passes the max/min condition, if any.
  std::optional<std::size_t> magnus_stable_letter(Presentation const& p);

  // (m, n) when p is <a, t | t a^m t^-1 a^-n> with a, t in that order.
  std::optional<std::pair<long, long>> bs_shape(Presentation const& p);

  // Picks an engine: free reduction without relators, the BS normal form
  // for Baumslag-Solitar presentations, Britton when a stable letter exists, else (for one relator) a substitution
  // x_last = x_first^-1 y that creates one, else Dehn under C'(1/6).
  // Throws PreconditionError when nothing applies.
  EnginePtr make_engine(Presentation const& p);

  // Triviality of many words; the OpenMP version splits the batch over
  // threads, the serial one is the reference.
  std::vector<char> batch_is_trivial(WordProblemEngine const&    e,
                                     std::vector<Letters> const& words);
  std::vector<char> batch_is_trivial_serial(WordProblemEngine const&    e,
                                            std::vector<Letters> const& words);

  // Keys of many words (engine must have keys).
  std::vector<std::string> batch_keys(WordProblemEngine const&    e,
                                      std::vector<Letters> const& words,
                                      bool                        parallel);

}  // namespace submon

#endif  // SUBMON_ENGINES_HPP_
