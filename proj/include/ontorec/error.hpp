#pragma once
// Error codes shared by every module. Operations throw ontorec::Error; the
// code is what callers (and the HTTP layer) dispatch on.

#include <stdexcept>
#include <string>
#include <string_view>

namespace ontorec {

enum class Errc {
  DuplicateId,
  UnknownId,
  UnknownParent,
  UnknownConcept,
  LayerViolation,
  CycleDetected,
  DomainViolation,
  RangeViolation,
  InvalidDomainLayer,
  InvalidId,
  EmptyCorpus,
  DuplicateDoc,
  UnknownDoc,
  EmptySeeds,
  UnknownSignalKind,
  EmptyArticleVector,
  DuplicateArticle,
  SchemaError,
  EmptyEvalSpec,
  ConfigError,
  BindFailure,
  IoError,
};

inline std::string_view to_string(Errc c) {
  switch (c) {
    case Errc::DuplicateId: return "DuplicateId";
    case Errc::UnknownId: return "UnknownId";
    case Errc::UnknownParent: return "UnknownParent";
    case Errc::UnknownConcept: return "UnknownConcept";
    case Errc::LayerViolation: return "LayerViolation";
    case Errc::CycleDetected: return "CycleDetected";
    case Errc::DomainViolation: return "DomainViolation";
    case Errc::RangeViolation: return "RangeViolation";
    case Errc::InvalidDomainLayer: return "InvalidDomainLayer";
    case Errc::InvalidId: return "InvalidId";
    case Errc::EmptyCorpus: return "EmptyCorpus";
    case Errc::DuplicateDoc: return "DuplicateDoc";
    case Errc::UnknownDoc: return "UnknownDoc";
    case Errc::EmptySeeds: return "EmptySeeds";
    case Errc::UnknownSignalKind: return "UnknownSignalKind";
    case Errc::EmptyArticleVector: return "EmptyArticleVector";
    case Errc::DuplicateArticle: return "DuplicateArticle";
    case Errc::SchemaError: return "SchemaError";
    case Errc::EmptyEvalSpec: return "EmptyEvalSpec";
    case Errc::ConfigError: return "ConfigError";
    case Errc::BindFailure: return "BindFailure";
    case Errc::IoError: return "IoError";
  }
  return "Unknown";
}

class Error : public std::runtime_error {
 public:
  Error(Errc code, const std::string& message)
      : std::runtime_error(std::string(to_string(code)) + ": " + message),
        code_(code),
        detail_(message) {}

  Errc code() const noexcept { return code_; }
  const std::string& detail() const noexcept { return detail_; }

 private:
  Errc code_;
  std::string detail_;
};

}  // namespace ontorec
