#ifndef SUBMON_ERRORS_HPP_
#define SUBMON_ERRORS_HPP_

#include <cstddef>
#include <stdexcept>
#include <string>

namespace submon {

  // Base class for every error the library throws on purpose.
  class Error : public std::runtime_error {
   public:
    using std::runtime_error::runtime_error;
  };

  // A documented precondition of an operation does not hold for the input.
  class PreconditionError : public Error {
   public:
    using Error::Error;
  };

  // Text input could not be parsed; `position()` is a 0-based offset.
  class ParseError : public Error {
   public:
    ParseError(std::string const& what, std::size_t position)
        : Error(what + " (at position " + std::to_string(position) + ")"),
          _position(position) {}

    std::size_t position() const noexcept {
      return _position;
    }

   private:
    std::size_t _position;
  };

}  // namespace submon

#endif  // SUBMON_ERRORS_HPP_
