#include "choreo/model/recipes.hpp"

namespace choreo {

namespace {

std::vector<std::string> allFamilyLabels() {
  std::vector<std::string> out;
  for (MotionFamily f : kAllFamilies) {
    out.emplace_back(familyLabel(f));
  }
  return out;
}

std::vector<std::string> allStyleNames() {
  std::vector<std::string> out;
  for (Style s : kAllStyles) {
    out.emplace_back(styleName(s));
  }
  return out;
}

nlohmann::json configJson(const TrainConfig& c) {
  return {
      {"learning_rate", c.learningRate},
      {"batch_size", c.batchSize},
      {"epochs", c.epochs},
      {"condition_dropout", c.conditionDropout},
      {"momentum", c.momentum},
      {"seed", c.seed},
      {"max_steps", c.maxSteps},
      {"gradient_clip", c.gradientClip},
      {"freeze_embedding", c.freezeEmbedding}};
}

} // namespace

TrainingRecipe overfitRecipe() {
  TrainingRecipe r;
  r.name = "overfit";
  r.corpus.families = {"wave left arm", "wave right arm", "side step", "torso bounce", "kick left leg"};
  r.corpus.itemsPerFamily = 1;
  r.corpus.framesPerItem = 40;
  r.corpusSeed = 7;
  r.initSeed = 1;
  r.pretrain.learningRate = 0.2;
  r.pretrain.batchSize = 5;
  r.pretrain.epochs = 2000;
  r.pretrain.maxSteps = 2000;
  r.pretrain.seed = 3;
  return r;
}

TrainingRecipe defaultRecipe() {
  TrainingRecipe r;
  r.name = "default";
  r.corpus.families = allFamilyLabels();
  r.corpus.itemsPerFamily = 4;
  r.corpus.styles = allStyleNames();
  r.corpus.framesPerItem = 60;
  r.corpusSeed = 7;
  r.initSeed = 1;
  r.pretrain.learningRate = 0.2;
  r.pretrain.batchSize = 16;
  r.pretrain.epochs = 1000;
  r.pretrain.maxSteps = 1500;
  r.pretrain.seed = 3;
  TrainConfig finetune = r.pretrain;
  finetune.learningRate = 0.05;
  finetune.maxSteps = 500;
  finetune.seed = 4;
  finetune.freezeEmbedding = true;
  r.finetune = finetune;
  return r;
}

TrainingRecipe tinyRecipe() {
  TrainingRecipe r;
  r.name = "tiny";
  r.corpus.families = allFamilyLabels();
  r.corpus.itemsPerFamily = 1;
  r.corpus.styles = {"happy"};
  r.corpus.framesPerItem = 40;
  r.corpusSeed = 7;
  r.shape.hidden = 16;
  r.shape.blocks = 2;
  r.shape.condition = 8;
  r.initSeed = 1;
  r.pretrain.learningRate = 0.1;
  r.pretrain.batchSize = 4;
  r.pretrain.epochs = 10;
  r.pretrain.maxSteps = 20;
  r.pretrain.seed = 3;
  TrainConfig finetune = r.pretrain;
  finetune.maxSteps = 5;
  finetune.freezeEmbedding = true;
  r.finetune = finetune;
  return r;
}

std::optional<TrainingRecipe> recipeByName(std::string_view name) {
  if (name == "overfit") {
    return overfitRecipe();
  }
  if (name == "default") {
    return defaultRecipe();
  }
  if (name == "tiny") {
    return tinyRecipe();
  }
  return std::nullopt;
}

RecipeResult runRecipe(const TrainingRecipe& recipe, const TrainProgress& progress) {
  std::vector<CorpusItem> corpus = generateCorpus(recipe.corpus, recipe.corpusSeed);
  Model initial = initialModel(recipe.shape, recipe.initSeed, corpus);
  const NoiseSchedule schedule = cosineSchedule(recipe.diffusionSteps);
  TrainResult training =
      recipe.finetune
          ? trainTwoStage(corpus, std::move(initial), recipe.pretrain, *recipe.finetune, schedule, progress)
          : train(corpus, std::move(initial), recipe.pretrain, schedule, progress);
  return {std::move(corpus), std::move(training)};
}

nlohmann::json recipeMetadata(const TrainingRecipe& recipe) {
  nlohmann::json out = {
      {"recipe", recipe.name},
      {"diffusion_steps", recipe.diffusionSteps},
      {"corpus",
       {{"families", recipe.corpus.families},
        {"items_per_family", recipe.corpus.itemsPerFamily},
        {"styles", recipe.corpus.styles},
        {"frames_per_item", recipe.corpus.framesPerItem},
        {"seed", recipe.corpusSeed}}},
      {"init_seed", recipe.initSeed},
      {"pretrain", configJson(recipe.pretrain)}};
  if (recipe.finetune) {
    out["finetune"] = configJson(*recipe.finetune);
  }
  return out;
}

} // namespace choreo
