// Build the background model at a few parameter choices and print the
// certified component verdicts plus a coarse profile table.
#include <cstdio>

#include "snowcone/base_model.hpp"

using namespace snowcone;

int main() {
    for (double eps : {0.1, 0.5}) {
        for (double delta : {0.01, 1.0}) {
            BaseModelInputs in;
            in.eps = eps;
            in.delta = LogVal::of(delta);
            BaseModelResult r = build_base_model(in);
            std::printf("eps=%.2f delta=%.2f  aa=2/delta^2=%.6g\n", eps, delta,
                        2.0 / (delta * delta));
            for (const CertStatement& c : r.stage.certs)
                std::printf("  %-28s %s\n", c.name.c_str(), c.result.status_str().c_str());
        }
    }
    BaseModelInputs in;
    BaseModelResult r = build_base_model(in);
    std::printf("\nprofile samples (r, h, h', h''):\n");
    for (double x : {1e-6, 1e-5, 1e-4, 1e-3, 1e-2, 1.0, 100.0}) {
        Jet j = r.h.jet(x);
        std::printf("  %-10.3g %-12.6g %-12.6g %-12.6g\n", x, j.f, j.df, j.ddf);
    }
    return 0;
}
