#ifndef SUBMON_DECIDERS_HPP_
#define SUBMON_DECIDERS_HPP_

#include <optional>
#include <set>
#include <string>
#include <vector>

#include "submon/distortion.hpp"
#include "submon/engines.hpp"
#include "submon/magnus.hpp"
#include "submon/verdict.hpp"

namespace submon {

  struct DeciderOptions {
    SearchLimits search;
    long         max_twist      = 3;  // Dehn twist powers tried, 0..max
    long         functional_box = 8;
  };

  ////////////////////////////////////////////////////////////////////////
  // Instances for the HNN-extension membership problem
  ////////////////////////////////////////////////////////////////////////

  // A generator t^j u of the submonoid, u in the fibre basis. The same
  // element is pre t^j with pre the shift of u by j.
  struct DgGenerator {
    long        j;
    OmegaWord   u;
    OmegaWord   pre;
    std::size_t source;  // index into the submonoid generators
  };

  struct DgInstance {
    Presentation             presentation;  // after any inversion of t
    std::string              stable;
    bool                     inverted = false;  // t was replaced by t^-1
    IntervalPresentation     interval;
    HnnData                  hnn;
    std::vector<DgGenerator> generators;
    std::optional<DgGenerator> query;

    long depth() const;  // the largest j
    std::string to_json() const;
    std::string to_text() const;
  };

  // Requires exponent sum 0 and the max/min condition for t, and
  // generators whose t-exponent sums are all >= 0 or all <= 0.
  DgInstance reduce_to_dg_instance(Presentation const&         p,
                                   std::string_view            t,
                                   std::vector<Letters> const& W,
                                   std::optional<Letters> const& query = {});

  ////////////////////////////////////////////////////////////////////////
  // Surface groups
  ////////////////////////////////////////////////////////////////////////

  Verdict decide_surface_submonoid(std::size_t g, bool orientable,
                                   std::vector<Letters> const& W,
                                   Letters const&              w,
                                   DeciderOptions const&       opt = {});

  // X is a set of signed generators (letters).
  Verdict decide_surface_magnus(std::size_t g, bool orientable,
                                std::vector<Letter> const& X,
                                Letters const&             w,
                                DeciderOptions const&      opt = {});

  Verdict decide_prefix_surface(std::size_t g, bool orientable,
                                Letters const&        w,
                                DeciderOptions const& opt = {});

  struct SignChoice {
    std::optional<std::size_t> stable;
    std::vector<int>           signs;
  };

  // The first generator t on which some x has nonzero exponent sum, with
  // signs making every sigma_t(x^e) >= 0.
  SignChoice choose_signs(Presentation const& p, std::vector<Letters> const& X);

  // P consists of powers s^k of single generators of S_g.
  Verdict powers_decider(std::size_t g, std::vector<Letters> const& P,
                         Letters const& w, DeciderOptions const& opt = {});

  ////////////////////////////////////////////////////////////////////////
  // Baumslag-Solitar, Burns, free-by-cyclic
  ////////////////////////////////////////////////////////////////////////

  // S is a proper nonempty subset of {'a','A','t','T'}; w is over a, t.
  Verdict decide_bs_magnus(long m, long n, std::set<char> const& S,
                           Letters const& w, DeciderOptions const& opt = {});

  Verdict decide_burns_magnus(std::set<char> const& S, Letters const& w,
                              DeciderOptions const& opt = {});

  // Membership of w (a word of the free group on theta's alphabet) in
  // Mon< theta^i(z) : z in Z, i in Z >.
  Verdict orbit_membership(GroupHom const& theta, GroupHom const& theta_inv,
                           std::vector<Letters> const& Z, Letters const& w,
                           DeciderOptions const& opt = {});

  // Positivity Mon<a,b> in a two-generator one-relator group with a
  // stable letter (exponent sum 0, max/min condition).
  Verdict decide_positivity_fbc(Presentation const& p, Letters const& w,
                                DeciderOptions const& opt = {});

  ////////////////////////////////////////////////////////////////////////
  // Gadgets
  ////////////////////////////////////////////////////////////////////////

  struct GadgetOutput {
    Presentation             presentation;
    std::vector<std::string> generating_set;
    std::string              stable;
    std::string              note;

    std::string to_json() const;
  };

  GadgetOutput emit_positivity_gadget(Presentation const&         p,
                                      std::vector<Letters> const& X);

}  // namespace submon

#endif  // SUBMON_DECIDERS_HPP_
