#pragma once

#include "choreo/motion/motion_sequence.hpp"

#include <array>
#include <cstdint>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

namespace choreo {

enum class MotionFamily {
  WaveLeftArm,
  WaveRightArm,
  SideStep,
  TorsoBounce,
  SpinInPlace,
  KickLeftLeg,
  KickRightLeg,
};

inline constexpr std::array<MotionFamily, 7> kAllFamilies = {
    MotionFamily::WaveLeftArm,
    MotionFamily::WaveRightArm,
    MotionFamily::SideStep,
    MotionFamily::TorsoBounce,
    MotionFamily::SpinInPlace,
    MotionFamily::KickLeftLeg,
    MotionFamily::KickRightLeg};

enum class Style { Angry, Childlike, Depressed, Happy, Proud, Strutting };

inline constexpr std::array<Style, 6> kAllStyles = {
    Style::Angry, Style::Childlike, Style::Depressed, Style::Happy, Style::Proud, Style::Strutting};

/// Prompt phrase of a family, e.g. "wave left arm".
std::string_view familyLabel(MotionFamily family);
std::optional<MotionFamily> parseFamily(std::string_view label);

std::string_view styleName(Style style);
std::optional<Style> parseStyle(std::string_view name);
std::string validStyleNames();

/// Per-item randomization of a procedural family.
struct MotionVariation {
  double phase = 0.0;     // radians
  double amplitude = 1.0; // multiplier
  double tempo = 1.0;     // multiplier on the base frequency
};

/// Closed-form procedural motion: a family's movement, optionally modulated
/// by a style (tempo, amplitude, posture, sway).
MotionSequence synthesizeMotion(
    MotionFamily family,
    std::optional<Style> style,
    int numFrames,
    const MotionVariation& variation = {});

struct CorpusItem {
  std::string label;
  MotionSequence motion;
  MotionFamily family;
  std::optional<Style> style;
};

struct CorpusSpec {
  /// Family labels as accepted by parseFamily().
  std::vector<std::string> families;
  int itemsPerFamily = 4;
  /// Each listed style adds itemsPerFamily styled items per family.
  std::vector<std::string> styles;
  int framesPerItem = 60;
};

/// Deterministic for a given seed. Labels follow "[style] <family phrase>".
std::vector<CorpusItem> generateCorpus(const CorpusSpec& spec, std::uint64_t seed);

/// Every word the corpus grammar can produce, for building a vocabulary.
std::vector<std::string> grammarLabels();

} // namespace choreo
