#pragma once

#include <array>
#include <cstdint>

namespace mmrt::imageops {

// 8x8 monospace bitmap glyphs for ASCII 32..126. Row byte per scanline,
// bit x (LSB) is the leftmost pixel. Same data ships as assets/mono8x8.fnt.
inline constexpr std::array<std::array<std::uint8_t, 8>, 95> kMono8x8Glyphs = {{
    {{0x00, 0x00, 0x00, 0x00, 0x00, 0x00, 0x00, 0x00}},  // ' '
    {{0x00, 0x18, 0x18, 0x18, 0x00, 0x18, 0x00, 0x00}},  // '!'
    {{0x00, 0x24, 0x24, 0x00, 0x00, 0x00, 0x00, 0x00}},  // '"'
    {{0x00, 0x48, 0x7c, 0x2c, 0x7f, 0x12, 0x00, 0x00}},  // '#'
    {{0x00, 0x10, 0x1e, 0x1e, 0x50, 0x7e, 0x10, 0x00}},  // '$'
    {{0x00, 0x00, 0x0b, 0x6e, 0xd0, 0xd0, 0x00, 0x00}},  // '%'
    {{0x00, 0x3c, 0x04, 0x9e, 0xf3, 0x6e, 0x00, 0x00}},  // '&'
    {{0x00, 0x18, 0x18, 0x00, 0x00, 0x00, 0x00, 0x00}},  // '''
    {{0x00, 0x10, 0x18, 0x08, 0x08, 0x18, 0x10, 0x00}},  // '('
    {{0x00, 0x08, 0x18, 0x10, 0x10, 0x18, 0x08, 0x00}},  // ')'
    {{0x00, 0x00, 0x3c, 0x18, 0x00, 0x00, 0x00, 0x00}},  // '*'
    {{0x00, 0x00, 0x10, 0x18, 0x18, 0x10, 0x00, 0x00}},  // '+'
    {{0x00, 0x00, 0x00, 0x00, 0x00, 0x18, 0x08, 0x00}},  // ','
    {{0x00, 0x00, 0x00, 0x00, 0x18, 0x00, 0x00, 0x00}},  // '-'
    {{0x00, 0x00, 0x00, 0x00, 0x00, 0x18, 0x00, 0x00}},  // '.'
    {{0x00, 0x60, 0x30, 0x18, 0x08, 0x06, 0x02, 0x00}},  // '/'
    {{0x00, 0x3c, 0x66, 0x5a, 0x46, 0x7c, 0x00, 0x00}},  // '0'
    {{0x00, 0x1c, 0x10, 0x10, 0x10, 0x7c, 0x00, 0x00}},  // '1'
    {{0x00, 0x3e, 0x60, 0x30, 0x18, 0x6e, 0x00, 0x00}},  // '2'
    {{0x00, 0x3e, 0x60, 0x38, 0x60, 0x7e, 0x00, 0x00}},  // '3'
    {{0x00, 0x30, 0x38, 0x26, 0x7e, 0x20, 0x00, 0x00}},  // '4'
    {{0x00, 0x3e, 0x06, 0x7c, 0x60, 0x7e, 0x00, 0x00}},  // '5'
    {{0x00, 0x3c, 0x06, 0x66, 0x46, 0x7c, 0x00, 0x00}},  // '6'
    {{0x00, 0x7e, 0x60, 0x30, 0x18, 0x0c, 0x00, 0x00}},  // '7'
    {{0x00, 0x3c, 0x66, 0x3c, 0x42, 0x7e, 0x00, 0x00}},  // '8'
    {{0x00, 0x3c, 0x62, 0x66, 0x68, 0x34, 0x00, 0x00}},  // '9'
    {{0x00, 0x00, 0x00, 0x18, 0x00, 0x18, 0x00, 0x00}},  // ':'
    {{0x00, 0x00, 0x00, 0x18, 0x00, 0x18, 0x08, 0x00}},  // ';'
    {{0x00, 0x00, 0x40, 0x1e, 0x1e, 0x40, 0x00, 0x00}},  // '<'
    {{0x00, 0x00, 0x00, 0x7e, 0x7e, 0x00, 0x00, 0x00}},  // '='
    {{0x00, 0x00, 0x02, 0x78, 0x78, 0x02, 0x00, 0x00}},  // '>'
    {{0x00, 0x3c, 0x60, 0x18, 0x18, 0x18, 0x00, 0x00}},  // '?'
    {{0x00, 0x00, 0xc6, 0xcb, 0xc9, 0xd3, 0x04, 0x00}},  // '@'
    {{0x00, 0x18, 0x3c, 0x24, 0x7e, 0xc3, 0x00, 0x00}},  // 'A'
    {{0x00, 0x3e, 0x66, 0x7e, 0xc6, 0x7e, 0x00, 0x00}},  // 'B'
    {{0x00, 0x7c, 0x06, 0x02, 0x06, 0x7c, 0x00, 0x00}},  // 'C'
    {{0x00, 0x3e, 0x62, 0x42, 0x62, 0x3e, 0x00, 0x00}},  // 'D'
    {{0x00, 0x7e, 0x06, 0x7e, 0x06, 0x7e, 0x00, 0x00}},  // 'E'
    {{0x00, 0x7c, 0x06, 0x7e, 0x06, 0x06, 0x00, 0x00}},  // 'F'
    {{0x00, 0x7c, 0x06, 0x22, 0x42, 0x6c, 0x00, 0x00}},  // 'G'
    {{0x00, 0x42, 0x42, 0x7e, 0x42, 0x42, 0x00, 0x00}},  // 'H'
    {{0x00, 0x3c, 0x18, 0x18, 0x18, 0x3c, 0x00, 0x00}},  // 'I'
    {{0x00, 0x38, 0x20, 0x20, 0x20, 0x3e, 0x00, 0x00}},  // 'J'
    {{0x00, 0x42, 0x32, 0x1e, 0x32, 0x42, 0x00, 0x00}},  // 'K'
    {{0x00, 0x06, 0x06, 0x06, 0x06, 0x7e, 0x00, 0x00}},  // 'L'
    {{0x00, 0xc6, 0xe7, 0xdb, 0xc3, 0xc3, 0x00, 0x00}},  // 'M'
    {{0x00, 0x46, 0x4e, 0x5a, 0x72, 0x62, 0x00, 0x00}},  // 'N'
    {{0x00, 0x3c, 0x66, 0xc2, 0x42, 0x7e, 0x00, 0x00}},  // 'O'
    {{0x00, 0x3e, 0xc6, 0x76, 0x06, 0x06, 0x00, 0x00}},  // 'P'
    {{0x00, 0x3c, 0x66, 0xc2, 0x42, 0x7e, 0x20, 0x00}},  // 'Q'
    {{0x00, 0x3e, 0x62, 0x3e, 0x66, 0xc2, 0x00, 0x00}},  // 'R'
    {{0x00, 0x3c, 0x06, 0x3c, 0x40, 0x7e, 0x00, 0x00}},  // 'S'
    {{0x00, 0xfe, 0x18, 0x18, 0x18, 0x18, 0x00, 0x00}},  // 'T'
    {{0x00, 0x42, 0x42, 0x42, 0x42, 0x7e, 0x00, 0x00}},  // 'U'
    {{0x00, 0xc2, 0x46, 0x64, 0x3c, 0x18, 0x00, 0x00}},  // 'V'
    {{0x00, 0x81, 0xd3, 0xdb, 0x6e, 0x66, 0x00, 0x00}},  // 'W'
    {{0x00, 0x42, 0x6c, 0x18, 0x2c, 0xc2, 0x00, 0x00}},  // 'X'
    {{0x00, 0x42, 0x66, 0x18, 0x18, 0x18, 0x00, 0x00}},  // 'Y'
    {{0x00, 0x7e, 0x60, 0x18, 0x0c, 0x7e, 0x00, 0x00}},  // 'Z'
    {{0x00, 0x18, 0x08, 0x08, 0x08, 0x08, 0x38, 0x00}},  // '['
    {{0x00, 0x02, 0x04, 0x08, 0x10, 0x20, 0x40, 0x00}},  // 'backslash'
    {{0x00, 0x18, 0x10, 0x10, 0x10, 0x10, 0x18, 0x00}},  // ']'
    {{0x00, 0x18, 0x66, 0x00, 0x00, 0x00, 0x00, 0x00}},  // '^'
    {{0x00, 0x00, 0x00, 0x00, 0x00, 0x00, 0x00, 0xff}},  // '_'
    {{0x00, 0x08, 0x00, 0x00, 0x00, 0x00, 0x00, 0x00}},  // '`'
    {{0x00, 0x00, 0x3c, 0x70, 0x66, 0x66, 0x00, 0x00}},  // 'a'
    {{0x00, 0x06, 0x3e, 0x66, 0x46, 0x7e, 0x00, 0x00}},  // 'b'
    {{0x00, 0x00, 0x78, 0x06, 0x06, 0x7c, 0x00, 0x00}},  // 'c'
    {{0x00, 0x40, 0x7c, 0x66, 0x62, 0x7e, 0x00, 0x00}},  // 'd'
    {{0x00, 0x00, 0x3c, 0x66, 0x06, 0x6e, 0x00, 0x00}},  // 'e'
    {{0x00, 0x30, 0x3c, 0x18, 0x18, 0x18, 0x00, 0x00}},  // 'f'
    {{0x00, 0x00, 0x7c, 0x66, 0x62, 0x6e, 0x7c, 0x00}},  // 'g'
    {{0x00, 0x06, 0x36, 0x66, 0x46, 0x46, 0x00, 0x00}},  // 'h'
    {{0x00, 0x10, 0x1c, 0x18, 0x18, 0x7c, 0x00, 0x00}},  // 'i'
    {{0x00, 0x10, 0x1c, 0x10, 0x10, 0x10, 0x18, 0x00}},  // 'j'
    {{0x00, 0x06, 0x66, 0x3e, 0x3e, 0x66, 0x00, 0x00}},  // 'k'
    {{0x00, 0x0e, 0x08, 0x08, 0x08, 0x38, 0x00, 0x00}},  // 'l'
    {{0x00, 0x00, 0x6e, 0xda, 0xda, 0xda, 0x00, 0x00}},  // 'm'
    {{0x00, 0x00, 0x34, 0x66, 0x46, 0x46, 0x00, 0x00}},  // 'n'
    {{0x00, 0x00, 0x3c, 0x66, 0x42, 0x7e, 0x00, 0x00}},  // 'o'
    {{0x00, 0x00, 0x3e, 0x66, 0x46, 0x7e, 0x06, 0x00}},  // 'p'
    {{0x00, 0x00, 0x7c, 0x66, 0x42, 0x7e, 0x40, 0x00}},  // 'q'
    {{0x00, 0x00, 0x68, 0x0c, 0x0c, 0x0c, 0x00, 0x00}},  // 'r'
    {{0x00, 0x00, 0x3c, 0x06, 0x70, 0x64, 0x00, 0x00}},  // 's'
    {{0x00, 0x08, 0x3e, 0x08, 0x08, 0x38, 0x00, 0x00}},  // 't'
    {{0x00, 0x00, 0x42, 0x46, 0x66, 0x6e, 0x00, 0x00}},  // 'u'
    {{0x00, 0x00, 0x42, 0x66, 0x2c, 0x18, 0x00, 0x00}},  // 'v'
    {{0x00, 0x00, 0x81, 0xd3, 0x5a, 0x66, 0x00, 0x00}},  // 'w'
    {{0x00, 0x00, 0x42, 0x3c, 0x38, 0x66, 0x00, 0x00}},  // 'x'
    {{0x00, 0x00, 0x42, 0x66, 0x2c, 0x18, 0x08, 0x00}},  // 'y'
    {{0x00, 0x00, 0x6c, 0x30, 0x18, 0x2e, 0x00, 0x00}},  // 'z'
    {{0x00, 0x30, 0x18, 0x18, 0x1c, 0x18, 0x30, 0x00}},  // '{'
    {{0x00, 0x18, 0x18, 0x18, 0x18, 0x18, 0x18, 0x00}},  // '|'
    {{0x00, 0x0c, 0x18, 0x18, 0x30, 0x18, 0x0c, 0x00}},  // '}'
    {{0x00, 0x00, 0x00, 0x04, 0x70, 0x00, 0x00, 0x00}},  // '~'
}};

}  // namespace mmrt::imageops
