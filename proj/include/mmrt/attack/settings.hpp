#pragma once

#include <optional>
#include <string>
#include <string_view>

namespace mmrt::attack {

// The evaluation settings of the campaign tables. Non-reattack settings send
// one prompt per case; reattack settings send the baseline pair first and the
// named recipe only on judged failure.
enum class AttackSetting {
  opt_image,
  gaussian_blur,
  color_jitter,
  posterize,
  proposed_text,
  proposed_both,
  reattack_image,
  reattack_text,
  reattack_multi_image,
  reattack_both,
};

const char* to_string(AttackSetting s);
std::optional<AttackSetting> setting_from_string(std::string_view s);
bool is_reattack(AttackSetting s);

// How one prompt bundle is assembled from a case.
enum class Recipe {
  opt,            // T_Opt, I_Opt
  gau,            // T_Opt, blurred image
  color,          // T_Opt, color-jittered image
  poster,         // T_Opt, posterized image
  proposed_text,  // inciting text, I_Opt
  proposed_both,  // inciting text, blurred image
  multi,          // two-image text, image split in half
  multi_both,     // two-image inciting text, blurred halves
};

const char* to_string(Recipe r);

Recipe initial_recipe(AttackSetting s);

// The retry recipe for reattack settings; reattack_both picks the multi-image
// branch only when the endpoint accepts two images.
std::optional<Recipe> retry_recipe(AttackSetting s, int endpoint_max_images);

}  // namespace mmrt::attack
