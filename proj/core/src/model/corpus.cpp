#include "choreo/model/corpus.hpp"

#include "choreo/common/error.hpp"
#include "choreo/motion/rotation.hpp"

#include <cmath>
#include <numbers>
#include <random>

namespace choreo {

namespace {

constexpr double kPi = std::numbers::pi;
constexpr double kStandingHeight = 0.93;
constexpr double kBaseFrequencyHz = 1.0;
constexpr double kArmRestAngle = 1.2;

// Joint indices of the canonical skeleton.
enum Joint : int {
  Pelvis = 0,
  LeftHip = 1,
  RightHip = 2,
  Spine1 = 3,
  LeftKnee = 4,
  RightKnee = 5,
  Spine2 = 6,
  Spine3 = 9,
  Neck = 12,
  Head = 15,
  LeftShoulder = 16,
  RightShoulder = 17,
  LeftElbow = 18,
  RightElbow = 19,
};

struct StyleModulation {
  double amplitude = 1.0;
  double tempo = 1.0;
  double sharpness = 1.0; // < 1 makes oscillations square-ish
  double spinePitch = 0.0;
  double headPitch = 0.0;
  double headRoll = 0.0;
  double bounce = 0.0;
  double pelvisSway = 0.0;
};

StyleModulation modulationFor(std::optional<Style> style) {
  StyleModulation m;
  if (!style) {
    return m;
  }
  switch (*style) {
    case Style::Angry:
      m.amplitude = 1.2;
      m.tempo = 1.4;
      m.sharpness = 0.4;
      m.spinePitch = 0.1;
      break;
    case Style::Childlike:
      m.tempo = 1.5;
      m.bounce = 0.04;
      m.headRoll = 0.15;
      break;
    case Style::Depressed:
      m.amplitude = 0.5;
      m.tempo = 0.8;
      m.spinePitch = 0.15;
      m.headPitch = 0.35;
      break;
    case Style::Happy:
      m.amplitude = 1.3;
      m.tempo = 1.25;
      m.bounce = 0.02;
      break;
    case Style::Proud:
      m.tempo = 0.9;
      m.spinePitch = -0.12;
      m.headPitch = -0.15;
      break;
    case Style::Strutting:
      m.tempo = 0.9;
      m.pelvisSway = 0.12;
      break;
  }
  return m;
}

double shaped(double s, double sharpness) {
  return std::copysign(std::pow(std::abs(s), sharpness), s);
}

class PoseWriter {
 public:
  explicit PoseWriter(FeatureMatrix& frames) : frames_(frames) {}

  void root(int f, const Eigen::Vector3d& translation) {
    frames_.row(f).head<3>() = translation.transpose();
  }

  void rotate(int f, int joint, const Eigen::Matrix3d& r) {
    frames_.row(f).segment<6>(rotationOffset(joint)) = rotationTo6D(r).transpose();
  }

 private:
  FeatureMatrix& frames_;
};

Eigen::Matrix3d rx(double a) {
  return Eigen::AngleAxisd(a, Eigen::Vector3d::UnitX()).toRotationMatrix();
}
Eigen::Matrix3d ry(double a) {
  return Eigen::AngleAxisd(a, Eigen::Vector3d::UnitY()).toRotationMatrix();
}
Eigen::Matrix3d rz(double a) {
  return Eigen::AngleAxisd(a, Eigen::Vector3d::UnitZ()).toRotationMatrix();
}

} // namespace

std::string_view familyLabel(MotionFamily family) {
  switch (family) {
    case MotionFamily::WaveLeftArm:
      return "wave left arm";
    case MotionFamily::WaveRightArm:
      return "wave right arm";
    case MotionFamily::SideStep:
      return "side step";
    case MotionFamily::TorsoBounce:
      return "torso bounce";
    case MotionFamily::SpinInPlace:
      return "spin in place";
    case MotionFamily::KickLeftLeg:
      return "kick left leg";
    case MotionFamily::KickRightLeg:
      return "kick right leg";
  }
  return "";
}

std::optional<MotionFamily> parseFamily(std::string_view label) {
  for (const auto f : kAllFamilies) {
    if (familyLabel(f) == label) {
      return f;
    }
  }
  return std::nullopt;
}

std::string_view styleName(Style style) {
  switch (style) {
    case Style::Angry:
      return "angry";
    case Style::Childlike:
      return "childlike";
    case Style::Depressed:
      return "depressed";
    case Style::Happy:
      return "happy";
    case Style::Proud:
      return "proud";
    case Style::Strutting:
      return "strutting";
  }
  return "";
}

std::optional<Style> parseStyle(std::string_view name) {
  for (const auto s : kAllStyles) {
    if (styleName(s) == name) {
      return s;
    }
  }
  return std::nullopt;
}

std::string validStyleNames() {
  std::string out;
  for (const auto s : kAllStyles) {
    if (!out.empty()) {
      out += ", ";
    }
    out += styleName(s);
  }
  return out;
}

MotionSequence synthesizeMotion(
    MotionFamily family,
    std::optional<Style> style,
    int numFrames,
    const MotionVariation& variation) {
  if (numFrames < 1 || numFrames > kMaxFrames) {
    fail(ErrorCode::InvalidArgument, "synthesized motion length out of range");
  }
  const StyleModulation mod = modulationFor(style);
  const double amp = variation.amplitude * mod.amplitude;
  const double omega = 2.0 * kPi * kBaseFrequencyHz * variation.tempo * mod.tempo;
  const double phase = variation.phase;

  FeatureMatrix frames = restPoseFrames(numFrames, Eigen::Vector3d(0.0, kStandingHeight, 0.0));
  PoseWriter pose(frames);

  for (int f = 0; f < numFrames; ++f) {
    const double t = static_cast<double>(f) / kFps;
    const double s1 = shaped(std::sin(omega * t + phase), mod.sharpness);
    const double s2 = shaped(std::sin(2.0 * omega * t + phase), mod.sharpness);
    const double lift = 0.5 + 0.5 * s1;

    Eigen::Vector3d root(0.0, kStandingHeight, 0.0);
    root.y() += mod.bounce * std::abs(std::sin(2.0 * omega * t + phase));
    Eigen::Matrix3d pelvis = rz(mod.pelvisSway * std::sin(omega * t + phase));
    double leftArm = -kArmRestAngle;
    double rightArm = kArmRestAngle;
    double leftElbow = 0.0;
    double rightElbow = 0.0;
    double leftHip = 0.0;
    double rightHip = 0.0;
    double leftKnee = 0.0;
    double rightKnee = 0.0;
    double hipAbduction = 0.0;

    switch (family) {
      case MotionFamily::WaveLeftArm:
        leftArm += 1.9 * amp * lift;
        leftElbow = 0.6 * amp * s2;
        break;
      case MotionFamily::WaveRightArm:
        rightArm -= 1.9 * amp * lift;
        rightElbow = -0.6 * amp * s2;
        break;
      case MotionFamily::SideStep:
        root.x() += 0.25 * amp * s1;
        root.y() -= 0.02 * amp * std::abs(s2);
        hipAbduction = 0.2 * amp * s2;
        break;
      case MotionFamily::TorsoBounce: {
        const double dip = 0.5 + 0.5 * s2;
        root.y() -= 0.08 * amp * dip;
        leftHip = rightHip = -0.45 * amp * dip;
        leftKnee = rightKnee = 0.9 * amp * dip;
        break;
      }
      case MotionFamily::SpinInPlace:
        pelvis = ry(0.5 * omega * t + phase) * pelvis;
        leftArm = -0.3;
        rightArm = 0.3;
        break;
      case MotionFamily::KickLeftLeg: {
        const double kick = std::max(0.0, s1);
        leftHip = -1.0 * amp * kick * kick;
        leftKnee = 0.8 * amp * std::max(0.0, std::sin(omega * t + phase + 0.6));
        break;
      }
      case MotionFamily::KickRightLeg: {
        const double kick = std::max(0.0, s1);
        rightHip = -1.0 * amp * kick * kick;
        rightKnee = 0.8 * amp * std::max(0.0, std::sin(omega * t + phase + 0.6));
        break;
      }
    }

    pose.root(f, root);
    pose.rotate(f, Pelvis, pelvis);
    pose.rotate(f, LeftHip, rx(leftHip) * rz(hipAbduction));
    pose.rotate(f, RightHip, rx(rightHip) * rz(-hipAbduction));
    pose.rotate(f, LeftKnee, rx(leftKnee));
    pose.rotate(f, RightKnee, rx(rightKnee));
    pose.rotate(f, Spine2, rx(mod.spinePitch));
    pose.rotate(f, Spine3, rx(mod.spinePitch));
    pose.rotate(f, Neck, rx(mod.headPitch));
    pose.rotate(f, Head, rx(mod.headPitch) * rz(mod.headRoll * std::sin(omega * t + phase)));
    pose.rotate(f, LeftShoulder, rz(leftArm));
    pose.rotate(f, RightShoulder, rz(rightArm));
    pose.rotate(f, LeftElbow, ry(leftElbow));
    pose.rotate(f, RightElbow, ry(rightElbow));
  }
  return MotionSequence(std::move(frames));
}

std::vector<CorpusItem> generateCorpus(const CorpusSpec& spec, std::uint64_t seed) {
  if (spec.itemsPerFamily < 1 || spec.families.empty()) {
    fail(ErrorCode::InvalidArgument, "corpus sizes must be at least 1");
  }
  std::vector<MotionFamily> families;
  for (const auto& name : spec.families) {
    const auto f = parseFamily(name);
    if (!f) {
      fail(ErrorCode::InvalidArgument, "unknown motion family '" + name + "'");
    }
    families.push_back(*f);
  }
  std::vector<std::optional<Style>> styles = {std::nullopt};
  for (const auto& name : spec.styles) {
    const auto s = parseStyle(name);
    if (!s) {
      fail(
          ErrorCode::InvalidArgument,
          "unknown style '" + name + "'; valid styles: " + validStyleNames());
    }
    styles.emplace_back(*s);
  }

  std::mt19937_64 rng(seed);
  std::uniform_real_distribution<double> phase(0.0, 2.0 * kPi);
  std::uniform_real_distribution<double> scale(0.8, 1.2);

  std::vector<CorpusItem> out;
  for (const auto& style : styles) {
    for (const auto family : families) {
      for (int i = 0; i < spec.itemsPerFamily; ++i) {
        MotionVariation v;
        v.phase = phase(rng);
        v.amplitude = scale(rng);
        v.tempo = scale(rng);
        std::string label(familyLabel(family));
        if (style) {
          label = std::string(styleName(*style)) + " " + label;
        }
        out.push_back(
            {std::move(label), synthesizeMotion(family, style, spec.framesPerItem, v), family, style});
      }
    }
  }
  return out;
}

std::vector<std::string> grammarLabels() {
  std::vector<std::string> out;
  for (const auto f : kAllFamilies) {
    out.emplace_back(familyLabel(f));
  }
  for (const auto s : kAllStyles) {
    out.emplace_back(styleName(s));
  }
  return out;
}

} // namespace choreo
