#include "mmrt/attack/settings.hpp"

namespace mmrt::attack {

const char* to_string(AttackSetting s) {
  switch (s) {
    case AttackSetting::opt_image: return "opt_image";
    case AttackSetting::gaussian_blur: return "gaussian_blur";
    case AttackSetting::color_jitter: return "color_jitter";
    case AttackSetting::posterize: return "posterize";
    case AttackSetting::proposed_text: return "proposed_text";
    case AttackSetting::proposed_both: return "proposed_both";
    case AttackSetting::reattack_image: return "reattack_image";
    case AttackSetting::reattack_text: return "reattack_text";
    case AttackSetting::reattack_multi_image: return "reattack_multi_image";
    case AttackSetting::reattack_both: return "reattack_both";
  }
  return "?";
}

std::optional<AttackSetting> setting_from_string(std::string_view s) {
  for (AttackSetting v :
       {AttackSetting::opt_image, AttackSetting::gaussian_blur, AttackSetting::color_jitter,
        AttackSetting::posterize, AttackSetting::proposed_text, AttackSetting::proposed_both,
        AttackSetting::reattack_image, AttackSetting::reattack_text,
        AttackSetting::reattack_multi_image, AttackSetting::reattack_both}) {
    if (s == to_string(v)) return v;
  }
  return std::nullopt;
}

bool is_reattack(AttackSetting s) {
  switch (s) {
    case AttackSetting::reattack_image:
    case AttackSetting::reattack_text:
    case AttackSetting::reattack_multi_image:
    case AttackSetting::reattack_both:
      return true;
    default:
      return false;
  }
}

const char* to_string(Recipe r) {
  switch (r) {
    case Recipe::opt: return "opt";
    case Recipe::gau: return "gau";
    case Recipe::color: return "color";
    case Recipe::poster: return "poster";
    case Recipe::proposed_text: return "proposed_text";
    case Recipe::proposed_both: return "proposed_both";
    case Recipe::multi: return "multi";
    case Recipe::multi_both: return "multi_both";
  }
  return "?";
}

Recipe initial_recipe(AttackSetting s) {
  switch (s) {
    case AttackSetting::opt_image: return Recipe::opt;
    case AttackSetting::gaussian_blur: return Recipe::gau;
    case AttackSetting::color_jitter: return Recipe::color;
    case AttackSetting::posterize: return Recipe::poster;
    case AttackSetting::proposed_text: return Recipe::proposed_text;
    case AttackSetting::proposed_both: return Recipe::proposed_both;
    default:
      // All reattack settings open with the baseline pair.
      return Recipe::opt;
  }
}

std::optional<Recipe> retry_recipe(AttackSetting s, int endpoint_max_images) {
  switch (s) {
    case AttackSetting::reattack_image: return Recipe::gau;
    case AttackSetting::reattack_text: return Recipe::proposed_text;
    case AttackSetting::reattack_multi_image: return Recipe::multi;
    case AttackSetting::reattack_both:
      return endpoint_max_images >= 2 ? Recipe::multi_both : Recipe::proposed_both;
    default:
      return std::nullopt;
  }
}

}  // namespace mmrt::attack
