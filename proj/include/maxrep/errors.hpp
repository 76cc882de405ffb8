#pragma once

#include <stdexcept>
#include <string>

namespace maxrep {

class Error : public std::runtime_error {
public:
  explicit Error(const std::string& msg) : std::runtime_error(msg) {}
};

struct InvalidSignature : Error { using Error::Error; };
struct DegenerateInput : Error { using Error::Error; };
struct DimensionMismatch : Error { using Error::Error; };
struct UnsupportedSignature : Error { using Error::Error; };

struct NotInGroup : Error {
  double residual;
  NotInGroup(const std::string& msg, double r) : Error(msg), residual(r) {}
};

struct NotPairwiseOpposite : Error { using Error::Error; };

struct AmbiguousOrientation : Error {
  double det;
  AmbiguousOrientation(const std::string& msg, double d) : Error(msg), det(d) {}
};

struct AmbiguousSignature : Error { using Error::Error; };
struct NotInInterval : Error { using Error::Error; };

struct SpectralGapTooSmall : Error {
  double gap;
  SpectralGapTooSmall(const std::string& msg, double g) : Error(msg), gap(g) {}
};

struct NoPowerFound : Error {
  int n_max;
  NoPowerFound(const std::string& msg, int n) : Error(msg), n_max(n) {}
};

struct ConstructionFailed : Error {
  std::string stage;
  ConstructionFailed(const std::string& msg, std::string st)
      : Error(msg), stage(std::move(st)) {}
};

struct ContainmentFailed : Error {
  std::string which;
  long sample;
  double margin;
  ContainmentFailed(const std::string& msg, std::string w, long s, double m)
      : Error(msg), which(std::move(w)), sample(s), margin(m) {}
};

struct NoFixedLineFound : Error { using Error::Error; };
struct NotSelfMapping : Error { using Error::Error; };
struct OutOfRange : Error { using Error::Error; };

struct QuadratureTooCoarse : Error {
  double leakage;
  QuadratureTooCoarse(const std::string& msg, double l) : Error(msg), leakage(l) {}
};

struct DepthExhausted : Error { using Error::Error; };
struct NotInGenericSet : Error { using Error::Error; };
struct CoincidentPoints : Error { using Error::Error; };
struct NotTransverse : Error { using Error::Error; };

}  // namespace maxrep
