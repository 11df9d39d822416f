#pragma once

#include <stdexcept>
#include <string>

namespace mmrt {

// Base class for every harness error. Subclasses carry no extra state;
// the type itself is the error code callers dispatch on.
class Error : public std::runtime_error {
 public:
  explicit Error(const std::string& what) : std::runtime_error(what) {}
};

#define MMRT_DEFINE_ERROR(Name)                               \
  class Name : public Error {                                 \
   public:                                                    \
    explicit Name(const std::string& what) : Error(what) {}   \
  }

// corpus
MMRT_DEFINE_ERROR(ManifestUnreadable);
MMRT_DEFINE_ERROR(EmptyCorpus);
MMRT_DEFINE_ERROR(DuplicateId);
MMRT_DEFINE_ERROR(IoFailure);
MMRT_DEFINE_ERROR(ImageDecodeError);

// promptkit
MMRT_DEFINE_ERROR(EmptyInstruction);

// imageops
MMRT_DEFINE_ERROR(UnrenderableText);
MMRT_DEFINE_ERROR(TooNarrow);
MMRT_DEFINE_ERROR(BadDistribution);

// clients
MMRT_DEFINE_ERROR(CapabilityError);
MMRT_DEFINE_ERROR(TransportError);
MMRT_DEFINE_ERROR(AuthError);
MMRT_DEFINE_ERROR(MalformedJudgeOutput);
MMRT_DEFINE_ERROR(BadRules);

// attack / defense
MMRT_DEFINE_ERROR(EmptyGroup);
MMRT_DEFINE_ERROR(EmptyPool);
MMRT_DEFINE_ERROR(DetectionInfeasible);
MMRT_DEFINE_ERROR(InsufficientDev);
MMRT_DEFINE_ERROR(EmptySet);

// cli
MMRT_DEFINE_ERROR(ConfigError);

#undef MMRT_DEFINE_ERROR

}  // namespace mmrt
