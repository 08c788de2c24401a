#pragma once

#include <stdexcept>
#include <string>

namespace alex {

/// Base of every exception raised by the library.
class Error : public std::runtime_error {
public:
  using std::runtime_error::runtime_error;
};

class CycleError : public Error { using Error::Error; };
class SizeError : public Error { using Error::Error; };
class ParentMismatch : public Error { using Error::Error; };
class TargetMismatch : public Error { using Error::Error; };
class NotComparable : public Error { using Error::Error; };
class NotOrderPreserving : public Error { using Error::Error; };
class NotADownSet : public Error { using Error::Error; };
class InvalidCover : public Error { using Error::Error; };
class InvalidDiagram : public Error { using Error::Error; };
class NotFunctorial : public Error { using Error::Error; };
class NotACocone : public Error { using Error::Error; };
class MissingOpen : public Error { using Error::Error; };
class NotBasic : public Error { using Error::Error; };

}  // namespace alex
