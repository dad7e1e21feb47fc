#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace waring7 {

enum class ErrorKind {
  Precondition,
  AntiderivativeUndefined,
  DegenerateFrame,
  NotInKernel,
  ZeroForm,
  OmegaDegenerate,
  FrameFitFailed,
  CollinearDirections,
  InconsistentSystem,
  NotInL,
  QSquare,
  IdentityMap,
  TangentConic,
  Parse,
};

std::string_view to_string(ErrorKind kind);

class Error : public std::runtime_error {
 public:
  Error(ErrorKind kind, const std::string& what, int index = -1)
      : std::runtime_error(what), kind_(kind), index_(index) {}

  ErrorKind kind() const noexcept { return kind_; }
  /// Cyclic index (0..2) of the quadric or ring involved, or -1.
  int index() const noexcept { return index_; }

 private:
  ErrorKind kind_;
  int index_;
};

inline void require(bool condition, const std::string& message) {
  if (!condition) throw Error(ErrorKind::Precondition, message);
}

}  // namespace waring7
