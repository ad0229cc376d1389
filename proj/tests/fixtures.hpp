#pragma once

// Frame and Gram bounds measured on the first full run and locked here.
// Later runs must stay within kFixtureTolerance (relative) of these values.

namespace fixtures {

inline constexpr double kFixtureTolerance = 0.05;

struct FrameRow {
  int n;
  int count;
  double a;
  double b;
};

// square lattice alpha = 0.95, sampling, tau = 6
inline constexpr FrameRow kMzRows[] = {
    {25, 61, 0.4242984891481379, 13.642321117129706},
    {50, 101, 0.36482414107345185, 14.613664367701213},
    {100, 177, 0.3562834299136046, 16.733212040073273},
    {200, 317, 0.3561627845246844, 18.9459898086401},
    {400, 577, 0.3561616436781605, 19.60827487072646},
};

// square lattice alpha = 1.1, interpolation, tau = 2
inline constexpr FrameRow kInterpRows[] = {
    {25, 1, 1.0, 1.0},
    {50, 13, 0.5520724161526734, 1.3714839119895348},
    {100, 45, 0.5237826522024233, 1.3896191559384534},
    {200, 101, 0.5226670463328692, 1.3938603080449452},
    {400, 241, 0.5217730144163075, 1.396319446416771},
};

// n + 1 closest points of the alpha = 0.95 lattice
inline constexpr FrameRow kSquareRows[] = {
    {10, 11, 0.04446341588247694, 1.5780559403488572},
    {20, 21, 0.061783884896026736, 1.648429097305495},
    {40, 41, 0.00019003059346686275, 1.6690041932855346},
    {80, 81, 0.00023549766744681698, 1.6707121278151316},
};

// V_5 Gabor frame bounds on the alpha = 0.95, tau = 6 sampling layer
inline constexpr double kGaborV5Min = 0.610135953477996;
inline constexpr double kGaborV5Max = 1.554592971482957;

inline bool within(double measured, double locked) {
  return measured >= locked * (1.0 - kFixtureTolerance) && measured <= locked * (1.0 + kFixtureTolerance);
}

} // namespace fixtures
