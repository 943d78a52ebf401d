#pragma once

namespace cavsim {

inline constexpr const char* kArtifactName = "cavsim";
inline constexpr const char* kArtifactVersion = "0.1.0";

}  // namespace cavsim
