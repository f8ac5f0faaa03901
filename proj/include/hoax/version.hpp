#pragma once

namespace hoax {

inline constexpr const char* kVersion = "1.0.0";
/// Bumped whenever the experiment/stats JSON layout changes.
inline constexpr int kReportSchemaVersion = 1;
/// Bumped whenever posts/likes/train CSV layouts change.
inline constexpr int kCsvSchemaVersion = 1;

}  // namespace hoax
