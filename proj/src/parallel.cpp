#include "sqfvar/parallel.hpp"

#include <cstdlib>
#include <string>

namespace sqfvar {

namespace {
std::atomic<unsigned> g_override{0};
}

unsigned thread_count() {
    if (unsigned o = g_override.load()) return o;
    if (const char* env = std::getenv(kThreadsEnv)) {
        try {
            long v = std::stol(env);
            if (v >= 1) return static_cast<unsigned>(std::min(v, 1024L));
        } catch (...) {
        }
    }
    return 1;
}

void set_thread_count(unsigned n) { g_override = n; }

}  // namespace sqfvar
