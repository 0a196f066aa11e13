#include "honeyauth/keyboard.hpp"

#include <array>

#include "honeyauth/errors.hpp"

namespace honeyauth {

namespace {

struct Layout {
    std::string_view name;
    std::array<std::string_view, 4> rows;  // number row first; each row staggered half a key right
};

constexpr std::array<Layout, 3> kLayouts{{
    {"qwerty", {"1234567890-=", "qwertyuiop[]", "asdfghjkl;'", "zxcvbnm,./"}},
    {"qwertz", {"1234567890", "qwertzuiop", "asdfghjkl", "yxcvbnm,.-"}},
    {"azerty", {"1234567890", "azertyuiop", "qsdfghjklm", "wxcvbn,;:!"}},
}};

const Layout* find_layout(std::string_view name) {
    for (const auto& l : kLayouts)
        if (l.name == name) return &l;
    return nullptr;
}

}  // namespace

bool keyboard_layout_known(std::string_view layout) { return find_layout(layout) != nullptr; }

std::string adjacent_keys(std::string_view layout, char key) {
    const Layout* l = find_layout(layout);
    if (l == nullptr) throw ConfigError("unknown keyboard layout '" + std::string(layout) + "'");
    std::string out;
    auto add = [&](std::size_t row, long col) {
        if (col < 0) return;
        auto r = l->rows[row];
        if (static_cast<std::size_t>(col) < r.size()) out.push_back(r[static_cast<std::size_t>(col)]);
    };
    for (std::size_t row = 0; row < l->rows.size(); ++row) {
        auto col = l->rows[row].find(key);
        if (col == std::string_view::npos) continue;
        auto c = static_cast<long>(col);
        add(row, c - 1);
        add(row, c + 1);
        if (row > 0) {
            add(row - 1, c);
            add(row - 1, c + 1);
        }
        if (row + 1 < l->rows.size()) {
            add(row + 1, c - 1);
            add(row + 1, c);
        }
        break;
    }
    return out;
}

}  // namespace honeyauth
