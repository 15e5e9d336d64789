#include <benchmark/benchmark.h>

// The packaged benchmark_main archive is LTO bytecode from another compiler.
BENCHMARK_MAIN();
