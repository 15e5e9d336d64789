#pragma once

#include "choreo/editing/engine.hpp"
#include "choreo/model/recipes.hpp"
#include "choreo/motion/motion_sequence.hpp"

#include <filesystem>
#include <random>

namespace choreo::test {

/// Uniformly random rotation, built without the library's rotation helpers.
Eigen::Matrix3d randomRotation(std::mt19937_64& rng);

/// Valid sequence with random root path and random per-joint rotations.
MotionSequence randomSequence(std::mt19937_64& rng, int frames);

/// Arbitrary finite matrix of the feature width (not a valid motion).
FeatureMatrix randomFeatures(std::mt19937_64& rng, int frames, double scale = 1.0);

/// Fresh directory under the system temp dir, removed on destruction.
class TempDir {
 public:
  explicit TempDir(const std::string& tag = "choreo-test");
  ~TempDir();
  TempDir(const TempDir&) = delete;
  TempDir& operator=(const TempDir&) = delete;
  const std::filesystem::path& path() const {
    return path_;
  }

 private:
  std::filesystem::path path_;
};

/// Small random-parameter model; quality irrelevant, for masking properties.
Model untrainedModel(std::uint64_t seed = 11);

/// Engine over a model with the default schedule and procedural styles.
Engine makeEngine(Model model, int diffusionSteps = kDefaultDiffusionSteps);

/// The tiny recipe, trained once per process.
const RecipeResult& tinyTrained();

/// Reads a whole file as bytes.
std::string readFile(const std::filesystem::path& path);
void writeFile(const std::filesystem::path& path, const std::string& data);

/// Directory holding the committed test fixtures.
std::filesystem::path fixtureDir();

/// A motion JSON file from fixtures/motion.
MotionSequence loadMotionFixture(const std::string& name);

struct ValidatorResult {
  bool ok = false;
  std::string output;
};

/// Runs the pinned Khronos glTF validator over the files. Not ok (with an
/// explanation) when the validator is unavailable.
ValidatorResult validateGltfFiles(const std::vector<std::filesystem::path>& files);

} // namespace choreo::test
