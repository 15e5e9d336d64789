#include "choreo/common/error.hpp"
#include "choreo/editing/engine.hpp"
#include "choreo/motion/rotation.hpp"
#include "choreo/motion/temporal.hpp"

#include "fixtures.hpp"

#include <doctest.h>

#include <random>

using namespace choreo;
using choreo::test::randomSequence;

namespace {

const Engine& engine() {
  static const Engine e = test::makeEngine(test::untrainedModel());
  return e;
}

bool allOrthonormal(const MotionSequence& m) {
  for (int f = 0; f < m.numFrames(); ++f) {
    for (int j = 0; j < kNumJoints; ++j) {
      if (!isOrthonormal6D(std::span<const double, 6>(m.frame(f).data() + rotationOffset(j), 6), 1e-6)) {
        return false;
      }
    }
  }
  return true;
}

double mse(const FeatureMatrix& a, const FeatureMatrix& b) {
  return (a - b).squaredNorm() / static_cast<double>(a.size());
}

} // namespace

TEST_CASE("style names are exactly the six styles") {
  std::vector<std::string> names;
  for (auto s : kAllStyles) {
    names.emplace_back(styleName(s));
  }
  CHECK(names == std::vector<std::string>{"angry", "childlike", "depressed", "happy", "proud", "strutting"});
  CHECK(engine().styles().references().size() == 6u);
  CHECK_FALSE(parseStyle("sleepy"));
}

TEST_CASE("generate_variants returns three distinct sequences of the requested length") {
  const auto v = engine().generateVariants("spin in place", 10.0, 7);
  REQUIRE(v.size() == 3u);
  for (const auto& m : v) {
    CHECK(m.numFrames() == 200);
    CHECK(allOrthonormal(m));
  }
  CHECK(mse(v[0].frames(), v[1].frames()) > 0.0);
  CHECK(mse(v[1].frames(), v[2].frames()) > 0.0);
  CHECK(mse(v[0].frames(), v[2].frames()) > 0.0);

  // Variant i is the single sample with seed + i.
  CHECK(engine().generateVariants("spin in place", 10.0, 8, 1)[0] == v[1]);
  CHECK(engine().generateVariants("side step", 4.0, 1)[0].numFrames() == 80);
  CHECK(engine().generateVariants("side step", 0.5, 1)[0].numFrames() == 10);

  CHECK_THROWS_WITH(engine().generateVariants("spin", 10.5, 1), doctest::Contains("duration cap exceeded"));
  CHECK_THROWS_WITH(engine().generateVariants("spin", 0.4, 1), doctest::Contains("duration cap exceeded"));
  CHECK_THROWS_AS(engine().generateVariants("", 4.0, 1), Error);
}

TEST_CASE("extend appends 100 frames per 5 s and keeps the input") {
  std::mt19937_64 rng(1);
  const MotionSequence x = randomSequence(rng, 200);
  const MotionSequence once = engine().extend(x, 5.0, "wave left arm", 3);
  REQUIRE(once.numFrames() == 300);
  CHECK(slice(once, 0, 200) == x);
  CHECK(allOrthonormal(once));

  const MotionSequence twice = engine().extend(once, 5.0, "wave left arm", 3);
  REQUIRE(twice.numFrames() == 400);
  CHECK(slice(twice, 0, 200) == x);
  CHECK(slice(twice, 0, 300) == once);

  const MotionSequence other = engine().extend(x, 5.0, "", 99);
  CHECK(slice(other, 0, 200) == x);

  CHECK(engine().extend(x, 2.5, "", 1).numFrames() == 250);
  CHECK(engine().extend(randomSequence(rng, 3), 1.0, "", 1).numFrames() == 23);
  CHECK_THROWS_AS(engine().extend(x, 0.0, "", 1), Error);
  CHECK_THROWS_AS(engine().extend(x, 5.5, "", 1), Error);
  CHECK_THROWS_AS(engine().extend(randomSequence(rng, 1150), 5.0, "", 1), Error);
}

TEST_CASE("blend preserves both inputs around a 100-frame bridge") {
  std::mt19937_64 rng(2);
  const MotionSequence a = randomSequence(rng, 200);
  const MotionSequence b = randomSequence(rng, 160);
  const MotionSequence out = engine().blend(a, b, 5);
  REQUIRE(out.numFrames() == 460);
  CHECK(slice(out, 0, 200) == a);
  CHECK(slice(out, 300, 460) == b);
  CHECK(allOrthonormal(out));

  CHECK(engine().blend(randomSequence(rng, 40), randomSequence(rng, 40), 1).numFrames() == 180);
  CHECK_THROWS_WITH(engine().blend(randomSequence(rng, 39), b, 1), doctest::Contains("sequence too short to blend"));
  CHECK_THROWS_WITH(engine().blend(a, randomSequence(rng, 20), 1), doctest::Contains("sequence too short to blend"));
}

TEST_CASE("partial-body edit only touches the part's features") {
  std::mt19937_64 rng(3);
  const MotionSequence x = randomSequence(rng, 60);
  for (auto part : kAllBodyParts) {
    const BodyPartMask mask = makeBodyPartMask(defaultSkeleton(), part);
    const MotionSequence out = engine().partialBodyEdit(x, part, "kick left leg", 4);
    REQUIRE(out.numFrames() == 60);
    CHECK(allOrthonormal(out));
    bool changed = false;
    for (int f = 0; f < 60; ++f) {
      for (int c = 0; c < kFeatureDim; ++c) {
        if (mask.featureMask[c]) {
          REQUIRE(out.frames()(f, c) == x.frames()(f, c));
        } else {
          changed = changed || out.frames()(f, c) != x.frames()(f, c);
        }
      }
    }
    CHECK(changed);
  }
  CHECK_THROWS_AS(engine().partialBodyEdit(x, BodyPart::LeftArm, "", 1), Error);
}

TEST_CASE("style transfer algebra over random sequences") {
  std::mt19937_64 rng(4);
  std::uniform_int_distribution<int> frames(5, 150);
  for (int trial = 0; trial < 100; ++trial) {
    const int f = frames(rng);
    const int stride = std::uniform_int_distribution<int>(1, std::min(8, f - 1))(rng);
    const MotionSequence x = randomSequence(rng, f);
    const MotionSequence y = randomSequence(rng, f);

    CHECK((styleTransferRaw(x.frames(), x.frames(), stride) - x.frames()).cwiseAbs().maxCoeff() < 1e-12);
    CHECK((styleTransfer(x, x, stride).frames() - x.frames()).cwiseAbs().maxCoeff() < 1e-6);

    const FeatureMatrix out = styleTransferRaw(x.frames(), y.frames(), stride);
    const FeatureMatrix highOut = out - lowPass(out, stride);
    const FeatureMatrix highX = x.frames() - lowPass(x.frames(), stride);
    CHECK((highOut - highX).cwiseAbs().maxCoeff() < 1e-6);
    CHECK((lowPass(out, stride) - lowPass(y.frames(), stride)).cwiseAbs().maxCoeff() < 1e-6);
  }
}

TEST_CASE("engine style transfer uses the tiled library reference") {
  std::mt19937_64 rng(5);
  const MotionSequence x = randomSequence(rng, 90);
  for (auto s : kAllStyles) {
    const MotionSequence ref = engine().styles().referenceFor(s, 90);
    CHECK(ref.numFrames() == 90);
    const MotionSequence out = engine().styleTransfer(x, s);
    CHECK(out == styleTransfer(x, ref, kDefaultLowPassStride));
    CHECK(allOrthonormal(out));
  }
  // Tiling is the identity when lengths already match.
  const MotionSequence& ref = engine().styles().reference(Style::Happy);
  CHECK(tileToLength(ref, ref.numFrames()) == ref);
  CHECK(styleTransfer(x, engine().styles().referenceFor(Style::Happy, 90), 4) == engine().styleTransfer(x, Style::Happy));
  CHECK_THROWS_AS(styleTransferRaw(x.frames(), randomSequence(rng, 89).frames(), 4), Error);
}

TEST_CASE("edits never mutate their inputs") {
  std::mt19937_64 rng(6);
  const MotionSequence a = randomSequence(rng, 50);
  const MotionSequence b = randomSequence(rng, 45);
  const MotionSequence aCopy = a;
  const MotionSequence bCopy = b;
  engine().extend(a, 1.0, "", 1);
  engine().styleTransfer(a, Style::Angry);
  engine().partialBodyEdit(a, BodyPart::RightLeg, "kick right leg", 1);
  engine().blend(a, b, 1);
  CHECK(a == aCopy);
  CHECK(b == bCopy);
}
