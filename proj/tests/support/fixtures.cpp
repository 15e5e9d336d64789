#include "fixtures.hpp"

#include "choreo/editing/style_library.hpp"
#include "choreo/motion/motion_json.hpp"

#include <Eigen/Geometry>

#include <cstdio>
#include <fstream>
#include <mutex>
#include <sstream>

namespace choreo::test {

Eigen::Matrix3d randomRotation(std::mt19937_64& rng) {
  // Normalized Gaussian 4-vector is a uniform unit quaternion.
  std::normal_distribution<double> normal(0.0, 1.0);
  Eigen::Quaterniond q(normal(rng), normal(rng), normal(rng), normal(rng));
  q.normalize();
  return q.toRotationMatrix();
}

MotionSequence randomSequence(std::mt19937_64& rng, int frames) {
  std::normal_distribution<double> normal(0.0, 1.0);
  FeatureMatrix out(frames, kFeatureDim);
  for (int f = 0; f < frames; ++f) {
    for (int c = 0; c < kRootWidth; ++c) {
      out(f, c) = 0.5 * normal(rng);
    }
    for (int j = 0; j < kNumJoints; ++j) {
      const Eigen::Matrix3d r = randomRotation(rng);
      for (int k = 0; k < 3; ++k) {
        out(f, rotationOffset(j) + k) = r(k, 0);
        out(f, rotationOffset(j) + 3 + k) = r(k, 1);
      }
    }
  }
  return MotionSequence(std::move(out));
}

FeatureMatrix randomFeatures(std::mt19937_64& rng, int frames, double scale) {
  std::normal_distribution<double> normal(0.0, scale);
  FeatureMatrix out(frames, kFeatureDim);
  for (Eigen::Index i = 0; i < out.size(); ++i) {
    out.data()[i] = normal(rng);
  }
  return out;
}

TempDir::TempDir(const std::string& tag) {
  std::random_device rd;
  std::ostringstream name;
  name << tag << "-" << std::hex << rd() << rd();
  path_ = std::filesystem::temp_directory_path() / name.str();
  std::filesystem::create_directories(path_);
}

TempDir::~TempDir() {
  std::error_code ec;
  std::filesystem::remove_all(path_, ec);
}

Model untrainedModel(std::uint64_t seed) {
  DenoiserShape shape;
  shape.hidden = 16;
  shape.blocks = 2;
  shape.condition = 8;
  return initialModel(shape, seed);
}

Engine makeEngine(Model model, int diffusionSteps) {
  return Engine(std::move(model), cosineSchedule(diffusionSteps), StyleLibrary::procedural());
}

const RecipeResult& tinyTrained() {
  static std::once_flag once;
  static std::unique_ptr<RecipeResult> result;
  std::call_once(once, [] { result = std::make_unique<RecipeResult>(runRecipe(tinyRecipe())); });
  return *result;
}

std::string readFile(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) {
    throw std::runtime_error("cannot read " + path.string());
  }
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

void writeFile(const std::filesystem::path& path, const std::string& data) {
  if (path.has_parent_path()) {
    std::filesystem::create_directories(path.parent_path());
  }
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  out << data;
  if (!out) {
    throw std::runtime_error("cannot write " + path.string());
  }
}

std::filesystem::path fixtureDir() {
  return CHOREO_FIXTURE_DIR;
}

MotionSequence loadMotionFixture(const std::string& name) {
  return motionFromJsonString(readFile(fixtureDir() / "motion" / name), defaultSkeleton());
}

namespace {

std::string shellQuote(const std::string& s) {
  std::string out = "'";
  for (char c : s) {
    out += c == '\'' ? std::string("'\\''") : std::string(1, c);
  }
  return out + "'";
}

} // namespace

ValidatorResult validateGltfFiles(const std::vector<std::filesystem::path>& files) {
  const std::string validator = CHOREO_GLTF_VALIDATOR;
  if (validator.empty()) {
    return {false, "glTF validator not configured (node/npm missing at configure time)"};
  }
  std::string command;
  size_t start = 0;
  while (true) {
    const size_t bar = validator.find('|', start);
    command += shellQuote(validator.substr(start, bar - start)) + " ";
    if (bar == std::string::npos) {
      break;
    }
    start = bar + 1;
  }
  for (const auto& f : files) {
    command += shellQuote(f.string()) + " ";
  }
  command += "2>&1";
  FILE* pipe = ::popen(command.c_str(), "r");
  if (!pipe) {
    return {false, "cannot run the glTF validator"};
  }
  ValidatorResult result;
  char chunk[4096];
  size_t n;
  while ((n = std::fread(chunk, 1, sizeof chunk, pipe)) > 0) {
    result.output.append(chunk, n);
  }
  result.ok = ::pclose(pipe) == 0;
  return result;
}

} // namespace choreo::test
