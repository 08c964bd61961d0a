// Seeded polytope generators: named bodies, hulls of random sphere points,
// random halfspace systems, parallelotopes over random bases, and products.
// A spec plus its seed fully determines the output.

#ifndef CONEVOL_GENERATORS_HPP
#define CONEVOL_GENERATORS_HPP

#include <memory>
#include <string>
#include <vector>

#include "conevol/errors.hpp"
#include "conevol/polytope.hpp"
#include "conevol/rng.hpp"

namespace conevol {

struct GeneratorSpec {
  enum class Kind { Named, SpherePoints, Halfspaces, Parallelotope, Product };

  Kind kind = Kind::Named;
  std::string name = "cube";  // cube | cross-polytope | simplex | prism | segment
  int dim = 3;
  int size = 8;
  std::uint64_t seed = 0;
  bool symmetrize = false;
  bool center = true;
  std::shared_ptr<const GeneratorSpec> left, right;  // product factors

  static GeneratorSpec parse(const std::string& text);
  std::string to_string() const;
};

namespace detail {

inline std::vector<Vector> regular_simplex_vertices(int n) {
  // n+1 unit vectors with equal pairwise angles: centered standard basis of
  // R^{n+1} mapped down to the hyperplane orthogonal to the all-ones vector
  Matrix ones(n + 1, 1);
  ones.setOnes();
  const Matrix basis = orthonormal_complement(ones / ones.norm());  // (n+1) x n
  std::vector<Vector> verts;
  const double scale = std::sqrt(1.0 - 1.0 / (n + 1));
  for (int i = 0; i <= n; ++i) {
    Vector e = Vector::Zero(n + 1);
    e[i] = 1.0;
    e -= Vector::Constant(n + 1, 1.0 / (n + 1));
    verts.push_back(basis.transpose() * e / scale);
  }
  return verts;
}

template <typename Make>
Polytope retry_generation(int attempts, Make&& make) {
  for (int trial = 0; trial < attempts; ++trial) {
    try {
      return make(trial);
    } catch (const DegenerateInput&) {
    } catch (const TooFewPoints&) {
    } catch (const Unbounded&) {
    } catch (const Infeasible&) {
    }
  }
  throw DegenerateSample("generator kept producing degenerate instances");
}

}  // namespace detail

inline Polytope generate(const GeneratorSpec& spec) {
  const int n = spec.dim;
  if (spec.kind != GeneratorSpec::Kind::Product &&
      !(spec.kind == GeneratorSpec::Kind::Named && spec.name == "segment")) {
    if (n < 2 || n > 6) throw ParseError("generator dimension must be 2..6");
  }

  Polytope p = [&]() -> Polytope {
    switch (spec.kind) {
      case GeneratorSpec::Kind::Named: {
        if (spec.name == "cube") {
          std::vector<Vector> normals;
          std::vector<double> offsets;
          for (int i = 0; i < n; ++i) {
            Vector e = Vector::Zero(n);
            e[i] = 1.0;
            normals.push_back(e);
            normals.push_back(-e);
            offsets.push_back(1.0);
            offsets.push_back(1.0);
          }
          return build_from_halfspaces(normals, offsets);
        }
        if (spec.name == "cross-polytope") {
          std::vector<Vector> pts;
          for (int i = 0; i < n; ++i) {
            Vector e = Vector::Zero(n);
            e[i] = 1.0;
            pts.push_back(e);
            pts.push_back(-e);
          }
          return build_from_vertices(n, pts);
        }
        if (spec.name == "simplex")
          return build_from_vertices(n, detail::regular_simplex_vertices(n));
        if (spec.name == "segment")
          return build_from_vertices(1, {Vector::Constant(1, -1.0), Vector::Constant(1, 1.0)});
        if (spec.name == "prism") {
          GeneratorSpec prod;
          prod.kind = GeneratorSpec::Kind::Product;
          auto tri = std::make_shared<GeneratorSpec>();
          tri->kind = GeneratorSpec::Kind::Named;
          tri->name = "simplex";
          tri->dim = 2;
          auto seg = std::make_shared<GeneratorSpec>();
          seg->kind = GeneratorSpec::Kind::Named;
          seg->name = "segment";
          seg->dim = 1;
          prod.left = std::move(tri);
          prod.right = std::move(seg);
          prod.center = false;  // centered below, like every other kind
          return generate(prod);
        }
        throw ParseError("unknown named polytope '" + spec.name + "'");
      }

      case GeneratorSpec::Kind::SpherePoints: {
        const int count = std::max(spec.size, n + 1);
        return detail::retry_generation(100, [&](int trial) {
          Rng rng(mix_seed(spec.seed, 0x5f3e + trial));
          std::vector<Vector> pts;
          for (int i = 0; i < count; ++i) {
            Vector v = rng.unit_vector(n);
            pts.push_back(v);
            if (spec.symmetrize) pts.push_back(-v);
          }
          return build_from_vertices(n, pts);
        });
      }

      case GeneratorSpec::Kind::Halfspaces: {
        const int count = std::max(spec.size, n + 1);
        return detail::retry_generation(100, [&](int trial) {
          Rng rng(mix_seed(spec.seed, 0x6a1f + trial));
          std::vector<Vector> normals;
          std::vector<double> offsets;
          for (int i = 0; i < count; ++i) {
            Vector a = rng.unit_vector(n);
            const double b = rng.uniform(0.7, 1.4);
            normals.push_back(a);
            offsets.push_back(b);
            if (spec.symmetrize) {
              normals.push_back(-a);
              offsets.push_back(b);
            }
          }
          return build_from_halfspaces(normals, offsets);
        });
      }

      case GeneratorSpec::Kind::Parallelotope: {
        return detail::retry_generation(100, [&](int trial) {
          Rng rng(mix_seed(spec.seed, 0x9a7a + trial));
          Matrix basis(n, n);
          for (int i = 0; i < n; ++i) basis.col(i) = rng.unit_vector(n) * rng.uniform(0.7, 1.3);
          if (std::abs(basis.determinant()) < 0.2)
            throw DegenerateInput("nearly singular basis");
          std::vector<Vector> pts;
          for (int mask = 0; mask < (1 << n); ++mask) {
            Vector v = Vector::Zero(n);
            for (int i = 0; i < n; ++i) v += ((mask >> i) & 1 ? 1.0 : -1.0) * basis.col(i);
            pts.push_back(v);
          }
          return build_from_vertices(n, pts);
        });
      }

      case GeneratorSpec::Kind::Product: {
        if (!spec.left || !spec.right) throw ParseError("product needs two factor specs");
        const Polytope a = generate(*spec.left);
        const Polytope b = generate(*spec.right);
        const int dim = a.dim() + b.dim();
        if (dim > 6) throw ParseError("product dimension exceeds 6");
        std::vector<Vector> pts;
        pts.reserve(a.vertices().size() * b.vertices().size());
        for (const auto& va : a.vertices())
          for (const auto& vb : b.vertices()) {
            Vector v(dim);
            v.head(a.dim()) = va;
            v.tail(b.dim()) = vb;
            pts.push_back(std::move(v));
          }
        return build_from_vertices(dim, pts);
      }
    }
    throw ParseError("unknown generator kind");
  }();

  return spec.center ? center_at_centroid(p) : p;
}

// --- spec string form ---------------------------------------------------
//
//   named:cube,dim=3
//   sphere:dim=3,size=8,seed=5[,symmetrize][,nocenter]
//   halfspaces:dim=4,size=10,seed=2
//   parallelotope:dim=3,seed=7
//   product(<spec>;<spec>)

namespace detail {

inline std::string trim(const std::string& s) {
  const auto a = s.find_first_not_of(" \t");
  const auto b = s.find_last_not_of(" \t");
  return a == std::string::npos ? "" : s.substr(a, b - a + 1);
}

}  // namespace detail

inline GeneratorSpec GeneratorSpec::parse(const std::string& text) {
  const std::string s = detail::trim(text);
  GeneratorSpec spec;

  if (s.rfind("product(", 0) == 0) {
    if (s.back() != ')') throw ParseError("product spec missing closing parenthesis");
    const std::string inner = s.substr(8, s.size() - 9);
    int depth = 0;
    std::size_t split = std::string::npos;
    for (std::size_t i = 0; i < inner.size(); ++i) {
      if (inner[i] == '(') ++depth;
      if (inner[i] == ')') --depth;
      if (inner[i] == ';' && depth == 0) {
        split = i;
        break;
      }
    }
    if (split == std::string::npos)
      throw ParseError("product spec needs two factors separated by ';'");
    spec.kind = Kind::Product;
    spec.left = std::make_shared<GeneratorSpec>(parse(inner.substr(0, split)));
    spec.right = std::make_shared<GeneratorSpec>(parse(inner.substr(split + 1)));
    spec.dim = spec.left->dim + spec.right->dim;
    return spec;
  }

  const auto colon = s.find(':');
  const std::string head = colon == std::string::npos ? s : s.substr(0, colon);
  std::string rest = colon == std::string::npos ? "" : s.substr(colon + 1);

  if (head == "named")
    spec.kind = Kind::Named;
  else if (head == "sphere")
    spec.kind = Kind::SpherePoints;
  else if (head == "halfspaces")
    spec.kind = Kind::Halfspaces;
  else if (head == "parallelotope")
    spec.kind = Kind::Parallelotope;
  else
    throw ParseError("unknown generator kind '" + head + "'");

  bool named_name_set = false;
  while (!rest.empty()) {
    const auto comma = rest.find(',');
    std::string token = detail::trim(rest.substr(0, comma));
    rest = comma == std::string::npos ? "" : rest.substr(comma + 1);
    if (token.empty()) continue;
    const auto eq = token.find('=');
    if (eq == std::string::npos) {
      if (token == "symmetrize")
        spec.symmetrize = true;
      else if (token == "nocenter")
        spec.center = false;
      else if (spec.kind == Kind::Named && !named_name_set) {
        spec.name = token;
        named_name_set = true;
        if (token == "segment") spec.dim = 1;
        if (token == "prism") spec.dim = 3;
      } else {
        throw ParseError("unexpected generator token '" + token + "'");
      }
      continue;
    }
    const std::string key = token.substr(0, eq);
    const std::string value = token.substr(eq + 1);
    try {
      if (key == "dim")
        spec.dim = std::stoi(value);
      else if (key == "size")
        spec.size = std::stoi(value);
      else if (key == "seed")
        spec.seed = std::stoull(value);
      else if (key == "center")
        spec.center = value != "0" && value != "false";
      else if (key == "symmetrize")
        spec.symmetrize = value != "0" && value != "false";
      else
        throw ParseError("unknown generator key '" + key + "'");
    } catch (const std::invalid_argument&) {
      throw ParseError("bad value for generator key '" + key + "'");
    }
  }
  if (spec.kind == Kind::Named && !named_name_set)
    throw ParseError("named generator needs a body name, e.g. named:cube");
  return spec;
}

inline std::string GeneratorSpec::to_string() const {
  if (kind == Kind::Product)
    return "product(" + (left ? left->to_string() : "?") + ";" +
           (right ? right->to_string() : "?") + ")";
  std::string out;
  switch (kind) {
    case Kind::Named: out = "named:" + name; break;
    case Kind::SpherePoints: out = "sphere:"; break;
    case Kind::Halfspaces: out = "halfspaces:"; break;
    case Kind::Parallelotope: out = "parallelotope:"; break;
    default: break;
  }
  if (kind == Kind::Named) out += ",dim=" + std::to_string(dim);
  else out += "dim=" + std::to_string(dim);
  if (kind == Kind::SpherePoints || kind == Kind::Halfspaces)
    out += ",size=" + std::to_string(size);
  if (kind != Kind::Named) out += ",seed=" + std::to_string(seed);
  if (symmetrize) out += ",symmetrize";
  if (!center) out += ",nocenter";
  return out;
}

/// Instance mix used by the verification suite: cycle dimensions and kinds,
/// sized so facet counts stay small (at most 12).
inline GeneratorSpec suite_spec(int index, std::uint64_t base_seed,
                                const std::vector<int>& dims) {
  const int dim = dims[index % dims.size()];
  const int variant = (index / static_cast<int>(dims.size())) % 5;
  GeneratorSpec spec;
  spec.dim = dim;
  spec.seed = mix_seed(base_seed, 1000 + index);
  spec.center = true;
  switch (variant) {
    case 0:
      spec.kind = GeneratorSpec::Kind::SpherePoints;
      spec.size = dim == 2 ? 8 : dim == 3 ? 7 : 6;
      break;
    case 1:
      spec.kind = GeneratorSpec::Kind::Halfspaces;
      spec.size = dim == 2 ? 8 : 10;
      break;
    case 2:
      spec.kind = GeneratorSpec::Kind::Parallelotope;
      break;
    case 3: {
      if (dim == 2) {
        spec.kind = GeneratorSpec::Kind::SpherePoints;
        spec.size = 5;
      } else {
        spec.kind = GeneratorSpec::Kind::Product;
        auto lhs = std::make_shared<GeneratorSpec>();
        lhs->kind = GeneratorSpec::Kind::SpherePoints;
        lhs->dim = 2;
        lhs->size = 5;
        lhs->seed = mix_seed(spec.seed, 7);
        auto rhs = std::make_shared<GeneratorSpec>();
        if (dim == 3) {
          rhs->kind = GeneratorSpec::Kind::Named;
          rhs->name = "segment";
          rhs->dim = 1;
        } else {
          rhs->kind = GeneratorSpec::Kind::SpherePoints;
          rhs->dim = 2;
          rhs->size = 5;
          rhs->seed = mix_seed(spec.seed, 8);
        }
        spec.left = std::move(lhs);
        spec.right = std::move(rhs);
      }
      break;
    }
    default:
      if (dim == 4) {
        spec.kind = GeneratorSpec::Kind::Halfspaces;
        spec.size = 12;
      } else {
        spec.kind = GeneratorSpec::Kind::SpherePoints;
        spec.size = dim == 2 ? 5 : 4;
        spec.symmetrize = true;
      }
      break;
  }
  return spec;
}

}  // namespace conevol

#endif  // CONEVOL_GENERATORS_HPP
