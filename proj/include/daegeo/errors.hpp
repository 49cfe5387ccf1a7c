#pragma once

#include <stdexcept>
#include <string>

namespace daegeo {

// Root of every error raised by the library. The CLI maps all of these to
// exit status 2.
class Error : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

class DimensionMismatch : public Error { public: using Error::Error; };
class DimensionError : public Error { public: using Error::Error; };
class ParseError : public Error { public: using Error::Error; };
class InterfaceMismatch : public Error { public: using Error::Error; };

class NotFullRowRank : public Error { public: using Error::Error; };
class NotInvertible : public Error { public: using Error::Error; };
class NotSquare : public Error { public: using Error::Error; };
class HasDisturbances : public Error { public: using Error::Error; };
class NotRegular : public Error { public: using Error::Error; };
class TransferMismatch : public Error { public: using Error::Error; };

class NotSurjective : public Error { public: using Error::Error; };
class KernelNotContained : public Error { public: using Error::Error; };

class EmptyConsistentSet : public Error { public: using Error::Error; };
class InconsistentInitialState : public Error { public: using Error::Error; };
class UncertifiedRelation : public Error { public: using Error::Error; };

class IterationLimit : public Error { public: using Error::Error; };
class InvalidConfig : public Error { public: using Error::Error; };

}  // namespace daegeo
