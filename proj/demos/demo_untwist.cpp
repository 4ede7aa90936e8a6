// Exercise the untwisting maps: equivariance residuals and the frame Ricci
// at round parameters for a few weights.
#include <cstdio>
#include <random>

#include "snowcone/curvature.hpp"
#include "snowcone/hopf_maps.hpp"

using namespace snowcone;

int main() {
    std::mt19937_64 rng(7);
    std::uniform_real_distribution<double> uni(0.0, 2.0 * M_PI);
    for (int k : {1, 2, 3, 5}) {
        double worst = 0.0;
        for (int i = 0; i < 500; ++i) {
            S3Pair p = random_s3_pair(rng);
            double th = uni(rng);
            S3Pair lhs = phi_k(k, act_ab(th, p, {1, k}));
            S3Pair rhs = act_ab(th, phi_k(k, p), {1, 0});
            worst = std::max(worst, lhs.dist(rhs));
        }
        Matrix ric = ricci_frame(brackets_s3s3_round(k));
        double gap = 0.0;
        for (int i = 0; i < 6; ++i)
            for (int j = 0; j < 6; ++j) gap = std::max(gap, std::fabs(ric[i][j] - (i == j ? 2.0 : 0.0)));
        std::printf("k=%d  untwist residual %.3e  round-frame Ricci gap from 2*Id %.3e\n", k, worst,
                    gap);
    }
    DiffeoWord w = DiffeoWord::parse("p1.p3.K1^-1.f2");
    S3Pair p{Quat{0.5, 0.5, 0.5, 0.5}, Quat{0.0, 1.0, 0.0, 0.0}};
    S3Pair q = w.inverse().apply(w.apply(p));
    std::printf("word %s inverse residual %.3e\n", w.str().c_str(), q.dist(p));
    return 0;
}
