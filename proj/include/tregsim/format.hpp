#pragma once

#include <cstdio>
#include <string>

namespace tregsim {

// 17 significant digits round-trips any double exactly; all numeric output
// goes through here so reruns are byte-identical.
inline std::string fmt17(double value) {
    char buf[64];
    std::snprintf(buf, sizeof(buf), "%.17g", value);
    return buf;
}

inline std::string fmt_fixed(double value, int decimals) {
    char buf[64];
    std::snprintf(buf, sizeof(buf), "%.*f", decimals, value);
    return buf;
}

}  // namespace tregsim
