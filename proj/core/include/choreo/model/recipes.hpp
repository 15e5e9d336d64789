#pragma once

#include "choreo/model/trainer.hpp"

#include <nlohmann/json.hpp>

#include <optional>
#include <string>
#include <string_view>
#include <vector>

namespace choreo {

/// Everything needed to reproduce a trained model from scratch.
struct TrainingRecipe {
  std::string name;
  CorpusSpec corpus;
  std::uint64_t corpusSeed = 0;
  DenoiserShape shape;
  std::uint64_t initSeed = 0;
  TrainConfig pretrain;
  /// Fine-tune on the styled subset with the embedding frozen.
  std::optional<TrainConfig> finetune;
  int diffusionSteps = 100;
};

/// Five single-item families, 40 frames, 2000 steps: small enough to
/// memorize, used to check that training and sampling actually work.
TrainingRecipe overfitRecipe();

/// All families, every style, two stages. The model `choreo serve` expects.
TrainingRecipe defaultRecipe();

/// Seconds-scale smoke-test model; output quality is irrelevant.
TrainingRecipe tinyRecipe();

/// "overfit", "default" or "tiny".
std::optional<TrainingRecipe> recipeByName(std::string_view name);

struct RecipeResult {
  std::vector<CorpusItem> corpus;
  TrainResult training;
};

RecipeResult runRecipe(const TrainingRecipe& recipe, const TrainProgress& progress = {});

/// Checkpoint sidecar metadata describing the recipe.
nlohmann::json recipeMetadata(const TrainingRecipe& recipe);

} // namespace choreo
