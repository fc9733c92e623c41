#pragma once

// Level of the goodness-of-fit checks in the unit tests. Dozens run per
// build, so 0.1% keeps false alarms rare.
inline constexpr double kKsLevel = 1e-3;
