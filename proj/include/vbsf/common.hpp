#pragma once

#include <cmath>
#include <cstdint>
#include <stdexcept>
#include <string>
#include <string_view>

namespace vbsf {

struct Rgb {
    std::uint8_t r = 0;
    std::uint8_t g = 0;
    std::uint8_t b = 0;

    friend bool operator==(const Rgb&, const Rgb&) = default;
};

inline constexpr Rgb kBlack{0, 0, 0};
inline constexpr Rgb kWhite{255, 255, 255};

inline double luminance(Rgb c) {
    return 0.299 * c.r + 0.587 * c.g + 0.114 * c.b;
}

/// Integer luminance used for grayscale export and contrast tests.
inline int luminance8(Rgb c) {
    return static_cast<int>(std::lround(luminance(c)));
}

enum class Label : std::uint8_t { Ham = 0, Spam = 1 };

inline const char* label_name(Label l) { return l == Label::Spam ? "spam" : "ham"; }

/// Base of every recoverable error raised by the library. The CLI maps these
/// to the "data error" exit code.
class Error : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

#define VBSF_DEFINE_ERROR(Name)                 \
    class Name : public Error {                 \
    public:                                     \
        using Error::Error;                     \
    }

VBSF_DEFINE_ERROR(MalformedHeaders);
VBSF_DEFINE_ERROR(ContentOverflow);
VBSF_DEFINE_ERROR(EmptyVocab);
VBSF_DEFINE_ERROR(DegenerateLabels);
VBSF_DEFINE_ERROR(VocabMismatch);
VBSF_DEFINE_ERROR(ShapeMismatch);
VBSF_DEFINE_ERROR(NonFinite);
VBSF_DEFINE_ERROR(TooFewSamples);
VBSF_DEFINE_ERROR(ManifestMismatch);
VBSF_DEFINE_ERROR(IoFailure);
VBSF_DEFINE_ERROR(LengthMismatch);
VBSF_DEFINE_ERROR(FormatError);

#undef VBSF_DEFINE_ERROR

}  // namespace vbsf
