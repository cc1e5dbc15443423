#include "sdwave/nonlinearity.hpp"

#include <cmath>
#include <memory>
#include <stdexcept>
#include <vector>

namespace sdwave::builtins {

Nonlinearity arctan() {
    Nonlinearity f;
    f.name = "arctan";
    f.f = [](double, double s) { return std::atan(s); };
    f.lipschitz = 1.0;
    f.bound = M_PI / 2.0;
    f.f_plus = [](double) { return M_PI / 2.0; };
    f.f_minus = [](double) { return -M_PI / 2.0; };
    f.nu = 1.0;
    return f;
}

Nonlinearity neg_arctan() {
    Nonlinearity f = arctan();
    f.name = "neg_arctan";
    f.f = [](double, double s) { return -std::atan(s); };
    f.f_plus = [](double) { return -M_PI / 2.0; };
    f.f_minus = [](double) { return M_PI / 2.0; };
    f.nu = -1.0;
    return f;
}

Nonlinearity rational_sr() {
    Nonlinearity f;
    f.name = "rational_sr";
    f.f = [](double, double s) { return s / (1.0 + s * s); };
    f.lipschitz = 1.0;
    f.bound = 0.5;
    f.f_plus = [](double) { return 0.0; };
    f.f_minus = [](double) { return 0.0; };
    f.f_inf = [](double) { return 1.0; };
    f.nu = 1.0;
    return f;
}

Nonlinearity neg_rational_sr() {
    Nonlinearity f = rational_sr();
    f.name = "neg_rational_sr";
    f.f = [](double, double s) { return -s / (1.0 + s * s); };
    f.f_inf = [](double) { return -1.0; };
    f.nu = -1.0;
    return f;
}

Nonlinearity zero() {
    Nonlinearity f;
    f.name = "zero";
    f.f = [](double, double) { return 0.0; };
    f.lipschitz = 1e-12;
    f.bound = 1e-12;
    f.f_plus = [](double) { return 0.0; };
    f.f_minus = [](double) { return 0.0; };
    f.nu = 0.0;
    return f;
}

Nonlinearity const_kernel(const SpectralBasis& basis, int mode, double amplitude) {
    if (mode < 0 || mode >= basis.n_modes())
        throw std::invalid_argument("const_kernel: mode index out of range");
    // Capture the eigenfunction by value; evaluate by linear interpolation so
    // the field is a plain function of x.
    auto xs = std::make_shared<std::vector<double>>();
    auto vs = std::make_shared<std::vector<double>>();
    xs->push_back(0.0);
    vs->push_back(0.0);
    for (int j = 0; j < basis.grid.size(); ++j) {
        xs->push_back(basis.grid[j]);
        vs->push_back(amplitude * basis.eigenvectors(j, mode));
    }
    xs->push_back(basis.length);
    vs->push_back(0.0);

    Nonlinearity f;
    f.name = "const_kernel";
    f.f = [xs, vs](double x, double) {
        auto it = std::upper_bound(xs->begin(), xs->end(), x);
        if (it == xs->begin()) return vs->front();
        if (it == xs->end()) return vs->back();
        const size_t j = it - xs->begin();
        const double t = (x - (*xs)[j - 1]) / ((*xs)[j] - (*xs)[j - 1]);
        return (1.0 - t) * (*vs)[j - 1] + t * (*vs)[j];
    };
    f.lipschitz = 1e-12;  // constant in s
    double vmax = 0.0;
    for (double v : *vs) vmax = std::max(vmax, std::abs(v));
    f.bound = vmax;
    return f;
}

Nonlinearity by_name(const std::string& name, const SpectralBasis& basis,
                     int kernel_mode, double amplitude) {
    if (name == "arctan") return arctan();
    if (name == "neg_arctan") return neg_arctan();
    if (name == "rational_sr") return rational_sr();
    if (name == "neg_rational_sr") return neg_rational_sr();
    if (name == "zero") return zero();
    if (name == "const_kernel") return const_kernel(basis, kernel_mode, amplitude);
    throw std::invalid_argument("unknown nonlinearity: " + name);
}

}  // namespace sdwave::builtins
