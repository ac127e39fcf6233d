// SPDX-License-Identifier: Apache-2.0
// Copyright 2026 crisda contributors

#pragma once

#include <array>
#include <cstdint>
#include <string>
#include <string_view>

// Minimal Unicode handling for short social-media text: UTF-8 codec, a
// compatibility fold covering the forms that actually occur in tweets
// (fullwidth ASCII, ligatures, exotic spaces, curly apostrophes), canonical
// composition of Latin base + combining mark pairs, and lowercasing for
// Latin, Greek and Cyrillic. Composed and decomposed inputs tokenize
// identically; anything outside the tables passes through untouched.

namespace crisda::uni {

inline constexpr char32_t kReplacement = 0xFFFD;

/// Decodes one UTF-8 sequence starting at s[i]; advances i past it.
/// Malformed bytes decode to U+FFFD one byte at a time.
inline char32_t decode_one(std::string_view s, std::size_t& i) {
    const auto byte = [&](std::size_t k) { return static_cast<unsigned char>(s[k]); };
    unsigned char b0 = byte(i);
    if (b0 < 0x80) { ++i; return b0; }

    int len = 0;
    char32_t cp = 0;
    if ((b0 & 0xE0) == 0xC0) { len = 2; cp = b0 & 0x1F; }
    else if ((b0 & 0xF0) == 0xE0) { len = 3; cp = b0 & 0x0F; }
    else if ((b0 & 0xF8) == 0xF0) { len = 4; cp = b0 & 0x07; }
    else { ++i; return kReplacement; }

    if (i + len > s.size()) { ++i; return kReplacement; }
    for (int k = 1; k < len; ++k) {
        unsigned char b = byte(i + k);
        if ((b & 0xC0) != 0x80) { ++i; return kReplacement; }
        cp = (cp << 6) | (b & 0x3F);
    }
    // Reject overlong encodings and surrogates.
    if ((len == 2 && cp < 0x80) || (len == 3 && cp < 0x800) || (len == 4 && cp < 0x10000) ||
        (cp >= 0xD800 && cp <= 0xDFFF) || cp > 0x10FFFF) {
        ++i;
        return kReplacement;
    }
    i += len;
    return cp;
}

inline void encode(char32_t cp, std::string& out) {
    if (cp < 0x80) {
        out.push_back(static_cast<char>(cp));
    } else if (cp < 0x800) {
        out.push_back(static_cast<char>(0xC0 | (cp >> 6)));
        out.push_back(static_cast<char>(0x80 | (cp & 0x3F)));
    } else if (cp < 0x10000) {
        out.push_back(static_cast<char>(0xE0 | (cp >> 12)));
        out.push_back(static_cast<char>(0x80 | ((cp >> 6) & 0x3F)));
        out.push_back(static_cast<char>(0x80 | (cp & 0x3F)));
    } else {
        out.push_back(static_cast<char>(0xF0 | (cp >> 18)));
        out.push_back(static_cast<char>(0x80 | ((cp >> 12) & 0x3F)));
        out.push_back(static_cast<char>(0x80 | ((cp >> 6) & 0x3F)));
        out.push_back(static_cast<char>(0x80 | (cp & 0x3F)));
    }
}

inline char32_t to_lower(char32_t c) {
    if (c >= 'A' && c <= 'Z') return c + 0x20;
    if (c >= 0xC0 && c <= 0xDE && c != 0xD7) return c + 0x20;
    // Latin Extended-A upper/lower pairs.
    if (c >= 0x0100 && c <= 0x0137 && (c % 2) == 0) {
        if (c == 0x0130) return 'i'; // dotted capital I
        return c + 1;
    }
    if (c >= 0x0139 && c <= 0x0148 && (c % 2) == 1) return c + 1;
    if (c >= 0x014A && c <= 0x0177 && (c % 2) == 0) return c + 1;
    if (c == 0x0178) return 0x00FF; // Y with diaeresis
    if (c >= 0x0179 && c <= 0x017E && (c % 2) == 1) return c + 1;
    // Greek.
    if (c == 0x0386) return 0x03AC;
    if (c >= 0x0388 && c <= 0x038A) return c + 0x25;
    if (c == 0x038C) return 0x03CC;
    if (c == 0x038E || c == 0x038F) return c + 0x3F;
    if (c >= 0x0391 && c <= 0x03AB && c != 0x03A2) return c + 0x20;
    // Cyrillic.
    if (c >= 0x0400 && c <= 0x040F) return c + 0x50;
    if (c >= 0x0410 && c <= 0x042F) return c + 0x20;
    return c;
}

inline bool is_combining_mark(char32_t c) { return c >= 0x0300 && c <= 0x036F; }

/// Canonical composition of a lowercase Latin base letter with one combining
/// mark. Returns 0 when the pair has no precomposed form in the tables.
inline char32_t compose(char32_t base, char32_t mark) {
    struct Row { char32_t mark; const char* bases; const char32_t* composed; };
    // Parallel arrays: bases[i] composes to composed[i] under the row's mark.
    static constexpr char32_t kGrave[] = {0xE0, 0xE8, 0xEC, 0xF2, 0xF9};
    static constexpr char32_t kAcute[] = {0xE1, 0x107, 0xE9, 0xED, 0x13A, 0x144,
                                          0xF3, 0x155, 0x15B, 0xFA, 0xFD, 0x17A};
    static constexpr char32_t kCirc[] = {0xE2, 0x109, 0xEA, 0x11D, 0x125, 0xEE,
                                         0x135, 0xF4, 0x15D, 0xFB, 0x175, 0x177};
    static constexpr char32_t kTilde[] = {0xE3, 0x129, 0xF1, 0xF5, 0x169};
    static constexpr char32_t kMacron[] = {0x101, 0x113, 0x12B, 0x14D, 0x16B};
    static constexpr char32_t kBreve[] = {0x103, 0x115, 0x11F, 0x12D, 0x14F, 0x16D};
    static constexpr char32_t kDotAbove[] = {0x10B, 0x117, 0x121, 0x17C};
    static constexpr char32_t kDiaeresis[] = {0xE4, 0xEB, 0xEF, 0xF6, 0xFC, 0xFF};
    static constexpr char32_t kRing[] = {0xE5, 0x16F};
    static constexpr char32_t kDblAcute[] = {0x151, 0x171};
    static constexpr char32_t kCaron[] = {0x10D, 0x10F, 0x11B, 0x13E, 0x148,
                                          0x159, 0x161, 0x165, 0x17E};
    static constexpr char32_t kCedilla[] = {0xE7, 0x123, 0x137, 0x13C, 0x146,
                                            0x157, 0x15F, 0x163};
    static constexpr char32_t kOgonek[] = {0x105, 0x119, 0x12F, 0x173};
    static constexpr Row kRows[] = {
        {0x0300, "aeiou", kGrave},
        {0x0301, "aceilnorsuyz", kAcute},
        {0x0302, "aceghijosuwy", kCirc},
        {0x0303, "ainou", kTilde},
        {0x0304, "aeiou", kMacron},
        {0x0306, "aegiou", kBreve},
        {0x0307, "cegz", kDotAbove},
        {0x0308, "aeiouy", kDiaeresis},
        {0x030A, "au", kRing},
        {0x030B, "ou", kDblAcute},
        {0x030C, "cdelnrstz", kCaron},
        {0x0327, "cgklnrst", kCedilla},
        {0x0328, "aeiu", kOgonek},
    };
    for (const Row& row : kRows) {
        if (row.mark != mark) continue;
        for (std::size_t i = 0; row.bases[i] != '\0'; ++i)
            if (static_cast<char32_t>(row.bases[i]) == base) return row.composed[i];
        return 0;
    }
    return 0;
}

/// Compatibility fold of a single codepoint (NFKC-style subset). Appends the
/// replacement sequence to `out`; most codepoints map to themselves.
inline void compat_expand(char32_t c, std::u32string& out) {
    switch (c) {
    case 0x00A0: out.push_back(' '); return;          // no-break space
    case 0x0132: out.append(U"IJ"); return;           // IJ digraph
    case 0x0133: out.append(U"ij"); return;
    case 0x017F: out.push_back('s'); return;          // long s
    case 0x02BC: case 0x2018: case 0x2019: out.push_back('\''); return;
    case 0x201C: case 0x201D: out.push_back('"'); return;
    case 0x200B: return;                              // zero-width space
    case 0x3000: out.push_back(' '); return;          // ideographic space
    case 0xFB00: out.append(U"ff"); return;
    case 0xFB01: out.append(U"fi"); return;
    case 0xFB02: out.append(U"fl"); return;
    case 0xFB03: out.append(U"ffi"); return;
    case 0xFB04: out.append(U"ffl"); return;
    case 0xFB05: case 0xFB06: out.append(U"st"); return;
    default: break;
    }
    if (c >= 0x2000 && c <= 0x200A) { out.push_back(' '); return; } // spaces
    if (c >= 0x2010 && c <= 0x2015) { out.push_back('-'); return; } // dashes
    if (c >= 0xFF01 && c <= 0xFF5E) { out.push_back(c - 0xFEE0); return; } // fullwidth
    out.push_back(c);
}

/// Full fold used by the tokenizer: decode -> compatibility expand ->
/// lowercase -> compose combining marks. Marks with no precomposed pairing
/// are dropped, so NFC and NFD spellings fold to the same sequence.
inline std::u32string normalize_fold(std::string_view text) {
    std::u32string expanded;
    expanded.reserve(text.size());
    std::size_t i = 0;
    while (i < text.size()) compat_expand(decode_one(text, i), expanded);

    std::u32string out;
    out.reserve(expanded.size());
    for (char32_t c : expanded) {
        c = to_lower(c);
        if (is_combining_mark(c) && !out.empty()) {
            char32_t merged = compose(out.back(), c);
            if (merged != 0) out.back() = merged;
            continue; // unknown mark: drop
        }
        out.push_back(c);
    }
    return out;
}

inline bool is_digit(char32_t c) {
    return (c >= '0' && c <= '9') || (c >= 0x0660 && c <= 0x0669) ||
           (c >= 0x06F0 && c <= 0x06F9) || (c >= 0x0966 && c <= 0x096F);
}

inline bool is_letter(char32_t c) {
    if (c >= 'a' && c <= 'z') return true;
    if (c >= 'A' && c <= 'Z') return true;
    if (c >= 0xC0 && c <= 0xFF) return c != 0xD7 && c != 0xF7;
    if (c >= 0x0100 && c <= 0x024F) return true;   // Latin Extended A/B
    if (c >= 0x0370 && c <= 0x03FF) return c != 0x037E && c != 0x0387; // Greek
    if (c >= 0x0400 && c <= 0x052F) return true;   // Cyrillic
    if (c >= 0x0531 && c <= 0x058F) return true;   // Armenian
    if (c >= 0x05D0 && c <= 0x05EA) return true;   // Hebrew
    if (c >= 0x0620 && c <= 0x06FF) return !is_digit(c); // Arabic
    if (c >= 0x0900 && c <= 0x097F) return !is_digit(c); // Devanagari
    if (c >= 0x0E01 && c <= 0x0E5B) return true;   // Thai
    if (c >= 0x3040 && c <= 0x30FF) return true;   // Kana
    if (c >= 0x4E00 && c <= 0x9FFF) return true;   // Han
    if (c >= 0xAC00 && c <= 0xD7A3) return true;   // Hangul
    return false;
}

} // namespace crisda::uni
