#include "msh/quadrature.hpp"

#include <array>
#include <cmath>
#include <numbers>
#include <queue>
#include <vector>

namespace msh {

namespace {

constexpr int kOrder = 16;

struct Rule {
    std::array<double, kOrder> nodes{};
    std::array<double, kOrder> weights{};
};

// Nodes are the roots of P_16, found by Newton from the Chebyshev guesses.
Rule make_rule() {
    Rule r;
    for (int i = 0; i < kOrder; ++i) {
        double x = std::cos(std::numbers::pi * (i + 0.75) / (kOrder + 0.5));
        double dp = 0.0;
        for (int it = 0; it < 100; ++it) {
            double p0 = 1.0, p1 = x;
            for (int k = 2; k <= kOrder; ++k) {
                const double p2 = ((2.0 * k - 1.0) * x * p1 - (k - 1.0) * p0) / k;
                p0 = p1;
                p1 = p2;
            }
            dp = kOrder * (x * p1 - p0) / (x * x - 1.0);
            const double dx = p1 / dp;
            x -= dx;
            if (std::abs(dx) < 1e-16) break;
        }
        r.nodes[static_cast<std::size_t>(i)] = x;
        r.weights[static_cast<std::size_t>(i)] = 2.0 / ((1.0 - x * x) * dp * dp);
    }
    return r;
}

const Rule& rule() {
    static const Rule r = make_rule();
    return r;
}

double apply(const std::function<double(double)>& f, double a, double b) {
    const Rule& r = rule();
    const double half = 0.5 * (b - a);
    const double mid = 0.5 * (a + b);
    double s = 0.0;
    for (int i = 0; i < kOrder; ++i) {
        s += r.weights[static_cast<std::size_t>(i)] * f(mid + half * r.nodes[static_cast<std::size_t>(i)]);
    }
    return s * half;
}

struct Panel {
    double a, b, value, error;
    bool operator<(const Panel& o) const { return error < o.error; }
};

Panel evaluate(const std::function<double(double)>& f, double a, double b) {
    const double m = 0.5 * (a + b);
    const double whole = apply(f, a, b);
    const double halves = apply(f, a, m) + apply(f, m, b);
    return Panel{a, b, halves, std::abs(halves - whole)};
}

}  // namespace

QuadratureResult integrate(const std::function<double(double)>& f, double a, double b, double abs_tol,
                           double rel_tol, int max_panels) {
    std::priority_queue<Panel> queue;
    queue.push(evaluate(f, a, b));
    double total = queue.top().value;
    double error = queue.top().error;
    int panels = 1;
    while (error > std::max(abs_tol, rel_tol * std::abs(total)) && panels < max_panels) {
        Panel worst = queue.top();
        queue.pop();
        const double m = 0.5 * (worst.a + worst.b);
        Panel left = evaluate(f, worst.a, m);
        Panel right = evaluate(f, m, worst.b);
        total += left.value + right.value - worst.value;
        error += left.error + right.error - worst.error;
        queue.push(left);
        queue.push(right);
        ++panels;
    }
    // re-sum to shed the drift of the running updates
    double value = 0.0, err = 0.0;
    std::vector<Panel> all;
    while (!queue.empty()) {
        all.push_back(queue.top());
        queue.pop();
    }
    for (auto it = all.rbegin(); it != all.rend(); ++it) {
        value += it->value;
        err += it->error;
    }
    return QuadratureResult{value, err, panels, err <= std::max(abs_tol, rel_tol * std::abs(value))};
}

}  // namespace msh
