#include "vanhove/parallel.hpp"

#include <cstdlib>
#include <string>

namespace vanhove {

int thread_count() {
    int hw = static_cast<int>(std::thread::hardware_concurrency());
    if (hw < 1) hw = 1;
    if (const char* env = std::getenv("VANHOVE_THREADS")) {
        try {
            int cap = std::stoi(env);
            if (cap >= 1) return std::min(hw, cap);
        } catch (...) {
        }
    }
    return hw;
}

}  // namespace vanhove
