// Regenerates tests/data/bessel_golden.csv from the arbitrary-precision
// oracle. Run manually when the grid changes; the file is committed.
#include "bessel_oracle.hpp"

#include <cstdio>
#include <random>

int main(int argc, char** argv)
{
    const char* path = argc > 1 ? argv[1] : "bessel_golden.csv";
    FILE* f = std::fopen(path, "wb");
    if (!f) {
        std::perror("open");
        return 1;
    }
    vwtest::BesselOracle oracle;
    std::mt19937 rng(20250810);
    std::uniform_real_distribution<double> unu(0.0, 60.0), ux(0.1, 120.0);
    std::fprintf(f, "nu,x,J,Y\n");
    for (int i = 0; i < 48; ++i) {
        const double nu = unu(rng);
        const double x = ux(rng);
        std::fprintf(f, "%.17g,%.17g,%.17g,%.17g\n", nu, x, oracle.j(nu, x),
                     oracle.y(nu, x));
    }
    std::fclose(f);
    return 0;
}
