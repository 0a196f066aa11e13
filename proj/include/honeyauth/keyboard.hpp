#pragma once

#include <string>
#include <string_view>

namespace honeyauth {

// qwerty, qwertz, azerty
bool keyboard_layout_known(std::string_view layout);

// Physically adjacent keys (unshifted) for a lowercase letter, digit or
// punctuation key. Empty when the key is not on the layout.
std::string adjacent_keys(std::string_view layout, char key);

}  // namespace honeyauth
