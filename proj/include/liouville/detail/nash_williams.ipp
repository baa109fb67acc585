#pragma once

#include <stdexcept>
#include <string>

namespace liouville {

template <class Volume>
Real nash_williams_partial(Volume&& volume, std::size_t n_max, std::size_t first)
{
    if (first == 0) throw std::invalid_argument("nash_williams_partial: sum starts at n >= 1");
    Real sum = 0;
    for (std::size_t n = first; n <= n_max; ++n) {
        Real v = volume(n);
        if (!(v > 0)) {
            throw std::invalid_argument("nash_williams_partial: nonpositive volume at n = " +
                                        std::to_string(n));
        }
        sum += Real(static_cast<unsigned long long>(n)) / v;
    }
    return sum;
}

}  // namespace liouville
