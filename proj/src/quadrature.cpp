#include "fracfem/quadrature.hpp"

#include <stdexcept>

namespace fracfem {

namespace {

void add_centroid(TriangleRule& rule, double w) {
  rule.points.push_back({1.0 / 3.0, 1.0 / 3.0, 1.0 / 3.0});
  rule.weights.push_back(w);
}

void add_orbit3(TriangleRule& rule, double a, double w) {
  const double c = 1.0 - 2.0 * a;
  rule.points.push_back({a, a, c});
  rule.points.push_back({a, c, a});
  rule.points.push_back({c, a, a});
  rule.weights.insert(rule.weights.end(), 3, w);
}

void add_orbit6(TriangleRule& rule, double a, double b, double w) {
  const double c = 1.0 - a - b;
  rule.points.push_back({a, b, c});
  rule.points.push_back({a, c, b});
  rule.points.push_back({b, a, c});
  rule.points.push_back({b, c, a});
  rule.points.push_back({c, a, b});
  rule.points.push_back({c, b, a});
  rule.weights.insert(rule.weights.end(), 6, w);
}

// Dunavant (1985) coefficients.
TriangleRule make_rule(int degree) {
  TriangleRule rule;
  rule.degree = degree;
  switch (degree) {
    case 1:
      add_centroid(rule, 1.0);
      break;
    case 2:
      add_orbit3(rule, 1.0 / 6.0, 1.0 / 3.0);
      break;
    case 4:
      add_orbit3(rule, 0.445948490915965, 0.223381589678011);
      add_orbit3(rule, 0.091576213509771, 0.109951743655322);
      break;
    case 5:
      add_centroid(rule, 0.225);
      add_orbit3(rule, 0.470142064105115, 0.132394152788506);
      add_orbit3(rule, 0.101286507323456, 0.125939180544827);
      break;
    case 6:
      add_orbit3(rule, 0.249286745170910, 0.116786275726379);
      add_orbit3(rule, 0.063089014491502, 0.050844906370207);
      add_orbit6(rule, 0.310352451033784, 0.053145049844817,
                 0.082851075618374);
      break;
    case 8:
      add_centroid(rule, 0.144315607677787);
      add_orbit3(rule, 0.459292588292723, 0.095091634267285);
      add_orbit3(rule, 0.170569307751760, 0.103217370534718);
      add_orbit3(rule, 0.050547228317031, 0.032458497623198);
      add_orbit6(rule, 0.263112829634638, 0.008394777409958,
                 0.027230314174435);
      break;
    default:
      throw std::logic_error("make_rule: unsupported degree");
  }
  return rule;
}

}  // namespace

const TriangleRule& triangle_rule(int degree) {
  static const TriangleRule rules[] = {make_rule(1), make_rule(2),
                                       make_rule(4), make_rule(5),
                                       make_rule(6), make_rule(8)};
  switch (degree) {
    case 1: return rules[0];
    case 2: return rules[1];
    case 3:
    case 4: return rules[2];
    case 5: return rules[3];
    case 6: return rules[4];
    case 7:
    case 8: return rules[5];
    default:
      throw std::invalid_argument("triangle_rule: degree must be in 1..8");
  }
}

}  // namespace fracfem
