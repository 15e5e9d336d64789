// choreo: serve the engine over TCP, train checkpoints, and run one-off
// generation/export from the command line.

#include "choreo/editing/engine.hpp"
#include "choreo/exporter/gltf.hpp"
#include "choreo/exporter/render.hpp"
#include "choreo/gallery/store.hpp"
#include "choreo/model/checkpoint.hpp"
#include "choreo/model/recipes.hpp"
#include "choreo/motion/motion_json.hpp"
#include "choreo/server/server.hpp"

#include <CLI11.hpp>
#include <spdlog/sinks/stdout_color_sinks.h>
#include <spdlog/spdlog.h>

#include <csignal>
#include <fstream>
#include <iostream>
#include <pthread.h>

namespace fs = std::filesystem;
using namespace choreo;

namespace {

void configureLogging(const std::string& level) {
  // Logs go to stderr; stdout carries only machine-readable lines.
  spdlog::set_default_logger(spdlog::stderr_color_mt("choreo"));
  const auto parsed = spdlog::level::from_str(level);
  if (parsed == spdlog::level::off && level != "off") {
    throw CLI::ValidationError("--log-level", "unknown level " + level);
  }
  spdlog::set_level(parsed);
}

Engine loadEngine(const fs::path& modelPath) {
  Checkpoint checkpoint = loadCheckpoint(modelPath);
  const int steps = checkpoint.metadata.value("diffusion_steps", 100);
  return Engine(std::move(checkpoint.model), cosineSchedule(steps), StyleLibrary::procedural());
}

void writeFile(const fs::path& path, const std::string& data) {
  if (path.has_parent_path()) {
    fs::create_directories(path.parent_path());
  }
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  out << data;
  if (!out) {
    fail(ErrorCode::Io, "cannot write " + path.string());
  }
}

int runServe(const fs::path& storeDir, const fs::path& modelPath, const ServerConfig& config, std::uint64_t seed) {
  // Block termination signals before any thread starts so only the waiter sees them.
  sigset_t signals;
  sigemptyset(&signals);
  sigaddset(&signals, SIGINT);
  sigaddset(&signals, SIGTERM);
  pthread_sigmask(SIG_BLOCK, &signals, nullptr);

  const Engine engine = loadEngine(modelPath);
  std::vector<LoadIssue> issues;
  SequenceStore store = SequenceStore::open(storeDir, &issues);
  for (const auto& issue : issues) {
    spdlog::warn("store record {}: {}", issue.id, issue.message);
  }
  spdlog::info("store {} holds {} records", storeDir.string(), store.size());

  const Service service(engine, store, seed);
  Server server(service, config);
  const int port = server.start();
  std::cout << "listening on " << config.bindAddress << ":" << port << std::endl;

  std::thread waiter([&] {
    int received = 0;
    sigwait(&signals, &received);
    spdlog::info("received signal {}, shutting down", received);
    server.stop();
  });
  server.wait();
  server.stop();
  // If stop() came from elsewhere, wake the waiter so it can be joined.
  pthread_kill(waiter.native_handle(), SIGTERM);
  waiter.join();
  return 0;
}

int runTrain(const std::string& recipeName, const fs::path& out, int steps) {
  auto recipe = recipeByName(recipeName);
  if (!recipe) {
    throw CLI::ValidationError("--recipe", "expected default, overfit or tiny");
  }
  if (steps > 0) {
    recipe->pretrain.maxSteps = steps;
    recipe->pretrain.epochs = std::max(recipe->pretrain.epochs, steps);
  }
  spdlog::info("training recipe '{}'", recipe->name);
  const RecipeResult result = runRecipe(*recipe, [](int step, int epoch, double loss) {
    if (step % 100 == 0) {
      spdlog::info("step {} epoch {} loss {:.6f}", step, epoch, loss);
    }
  });
  const auto& history = result.training.lossHistory;
  spdlog::info("finished {} steps, last loss {:.6f}", history.size(), history.empty() ? 0.0 : history.back());
  saveCheckpoint(out, result.training.model, recipeMetadata(*recipe));
  std::cout << "wrote " << out.string() << std::endl;
  return 0;
}

int runGenerate(const fs::path& modelPath, const std::string& prompt, double duration, std::uint64_t seed, const fs::path& outDir) {
  const Engine engine = loadEngine(modelPath);
  const auto variants = engine.generateVariants(prompt, duration, seed);
  for (size_t i = 0; i < variants.size(); ++i) {
    const fs::path path = outDir / ("variant_" + std::to_string(i) + ".json");
    writeFile(path, motionToJsonString(variants[i], engine.skeleton()) + "\n");
    std::cout << path.string() << std::endl;
  }
  return 0;
}

int runExport(const fs::path& storeDir, const std::string& id, const std::string& format, int everyK, const fs::path& out) {
  std::vector<LoadIssue> issues;
  const SequenceStore store = SequenceStore::load(storeDir, &issues);
  const SequenceRecord record = store.get(id);
  const Skeleton& skeleton = defaultSkeleton();
  if (format == "gltf") {
    writeFile(out, exportGltf(record.motion, skeleton, id));
  } else if (format == "motion_json") {
    writeFile(out, motionToJsonString(record.motion, skeleton) + "\n");
  } else if (format == "thumbnail") {
    const auto png = renderFramePng(skeleton, record.motion.frame(0));
    writeFile(out, std::string(png.begin(), png.end()));
  } else {
    writeFrameExport(exportFrames(record.motion, everyK, skeleton), out);
  }
  std::cout << out.string() << std::endl;
  return 0;
}

} // namespace

int main(int argc, char** argv) {
  CLI::App app{"choreo: text-to-dance generation and editing engine"};
  app.require_subcommand(1);
  std::string logLevel = "info";
  app.add_option("--log-level", logLevel, "trace, debug, info, warn, error, critical or off")
      ->capture_default_str();
  app.fallthrough();

  ServerConfig serverConfig;
  fs::path storeDir;
  fs::path modelPath;
  std::uint64_t seed = 0;
  auto* serve = app.add_subcommand("serve", "Run the protocol server");
  serve->add_option("--port", serverConfig.port, "TCP port (0 = ephemeral)")->capture_default_str()->check(CLI::Range(0, 65535));
  serve->add_option("--bind", serverConfig.bindAddress, "IPv4 address to bind")->capture_default_str();
  serve->add_option("--store", storeDir, "Store directory")->required();
  serve->add_option("--model", modelPath, "Model checkpoint")->required()->check(CLI::ExistingFile);
  serve->add_option("--seed", seed, "Seed for requests without one")->capture_default_str();

  std::string recipe = "default";
  fs::path trainOut;
  int steps = 0;
  auto* trainCmd = app.add_subcommand("train", "Train a checkpoint from a built-in recipe");
  trainCmd->add_option("--recipe", recipe, "default, overfit or tiny")->capture_default_str();
  trainCmd->add_option("--out", trainOut, "Checkpoint path")->required();
  trainCmd->add_option("--steps", steps, "Override the pretraining step count");

  std::string prompt;
  double duration = kMaxGenerationSeconds;
  fs::path outDir;
  auto* generate = app.add_subcommand("generate", "Generate three variants as motion JSON files");
  generate->add_option("--model", modelPath, "Model checkpoint")->required()->check(CLI::ExistingFile);
  generate->add_option("--prompt", prompt, "Text prompt")->required();
  generate->add_option("--duration", duration, "Seconds (0.5 to 10)")->capture_default_str();
  generate->add_option("--seed", seed, "Seed of the first variant")->capture_default_str();
  generate->add_option("--out", outDir, "Output directory")->required();

  std::string id;
  std::string format = "gltf";
  int everyK = 1;
  fs::path exportOut;
  auto* exportCmd = app.add_subcommand("export", "Export a stored sequence");
  exportCmd->add_option("--store", storeDir, "Store directory")->required()->check(CLI::ExistingDirectory);
  exportCmd->add_option("--id", id, "Sequence id")->required();
  exportCmd->add_option("--format", format, "gltf, motion_json, frames or thumbnail")
      ->capture_default_str()
      ->check(CLI::IsMember({"gltf", "motion_json", "frames", "thumbnail"}));
  exportCmd->add_option("--every-k", everyK, "Frame stride for the frames format")->check(CLI::PositiveNumber);
  exportCmd->add_option("--out", exportOut, "Output file (directory for frames)")->required();

  try {
    app.parse(argc, argv);
    configureLogging(logLevel);
  } catch (const CLI::ParseError& e) {
    return app.exit(e);
  }

  try {
    if (*serve) {
      return runServe(storeDir, modelPath, serverConfig, seed);
    }
    if (*trainCmd) {
      return runTrain(recipe, trainOut, steps);
    }
    if (*generate) {
      return runGenerate(modelPath, prompt, duration, seed, outDir);
    }
    return runExport(storeDir, id, format, everyK, exportOut);
  } catch (const CLI::ParseError& e) {
    return app.exit(e);
  } catch (const std::exception& e) {
    spdlog::error("{}", e.what());
    return 1;
  }
}
