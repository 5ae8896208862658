#pragma once

#include <string>
#include <vector>

#include "gfde/problem.hpp"

inline gfde::Problem make_problem(const std::string& a, const std::string& b, const std::string& psi,
                                  std::vector<double> P, double d = 0.0, double c = 0.0, double k = 1.0) {
    gfde::Problem p;
    p.a = gfde::Expr::parse(a);
    p.b = gfde::Expr::parse(b);
    p.psi = gfde::Expr::parse(psi);
    p.P = gfde::Polynomial(std::move(P));
    p.d = d;
    p.c = c;
    p.k = k;
    return p;
}
