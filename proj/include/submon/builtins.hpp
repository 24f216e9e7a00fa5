#ifndef SUBMON_BUILTINS_HPP_
#define SUBMON_BUILTINS_HPP_

#include <string>
#include <vector>

#include "submon/words.hpp"

namespace submon {

  // S_2 = <a,b,c,d | abABcdCD>; S_g for g != 2 uses a1 b1 ... ag bg and
  // [a1,b1]...[ag,bg].
  Presentation orientable_surface(std::size_t g);
  // N_2 = <c,d | ccdd>; N_g for g != 2 uses a1 ... ag and a1^2...ag^2.
  Presentation nonorientable_surface(std::size_t g);
  Presentation surface_group(std::size_t g, bool orientable);

  // <a,t | t a^m t^-1 a^-n>
  Presentation bs_group(long m, long n);
  // <a,t | t (a t a^-1) = (a t a^-1) t>
  Presentation burns_group();

  // "S2", "N3", "BS 2 3", "BS(2,-3)", "BURNS" (case-insensitive).
  Presentation builtin_presentation(std::string const& name);

  // Generators of the prefix monoid. For S_2 these are the prefixes of
  // abAB and of dcDC; for N_2 they are c, cc, ccd; otherwise the
  // nonempty proper prefixes of the relator.
  std::vector<Letters> prefix_generators(Presentation const& p,
                                         std::size_t g, bool orientable);

}  // namespace submon

#endif  // SUBMON_BUILTINS_HPP_
