"""Regenerates src/airy_reference.hpp from 40-digit mpmath evaluations."""
import mpmath as mp

mp.mp.dps = 40

POINTS = [-100, -80, -50.5, -30, -20, -12.5, -10, -8.01, -8, -7.99, -6, -5, -4.2,
          -3, -2.5, -1, -0.3, 0, 0.25, 1, 2, 2.7, 3.5, 4.99, 5, 5.01, 6, 7, 7.99,
          8, 8.01, 10, 15, 25, 50, 99]
ZEROS = list(range(1, 11)) + [20, 40, 41, 50, 100, 150, 200]

def s(v):
    return mp.nstr(v, 20, min_fixed=-mp.inf, max_fixed=mp.inf)

lines = ["// Generated by tests/oracles/airy_reference.py (mpmath, 40 digits). Do not edit.",
         "#pragma once", "", "#include <array>", "", "namespace airy_ref {", "",
         "struct Point { double x; double ai; double ai_prime; };", "",
         f"inline constexpr std::array<Point, {len(POINTS)}> kPoints{{{{"]
for x in POINTS:
    x = mp.mpf(x)
    lines.append(f"    {{{s(x)}, {mp.nstr(mp.airyai(x), 20)}, {mp.nstr(mp.airyai(x, 1), 20)}}},")
lines.append("}};")
lines += ["", "struct Zero { int n; double lambda; double ai_prime; };", "",
          f"inline constexpr std::array<Zero, {len(ZEROS)}> kZeros{{{{"]
for n in ZEROS:
    z = mp.airyaizero(n)
    lines.append(f"    {{{n}, {mp.nstr(z, 20)}, {mp.nstr(mp.airyai(z, 1), 20)}}},")
lines += ["}};", "", "}  // namespace airy_ref", ""]
open("src/airy_reference.hpp", "w").write("\n".join(lines))
