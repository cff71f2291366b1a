#pragma once

#include <charconv>
#include <cstddef>
#include <cstdint>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>
#include <system_error>

#include "touchauth/dataset.hpp"
#include "touchauth/errors.hpp"
#include "touchauth/knn.hpp"
#include "touchauth/random_forest.hpp"

namespace touchauth {
namespace detail {

/// Shortest hex form that round-trips the exact bit pattern.
inline std::string hex_double(double v) {
  char buf[48];
  const auto res = std::to_chars(buf, buf + sizeof buf, v, std::chars_format::hex);
  return std::string(buf, res.ptr);
}

/// Whitespace-delimited token reader with typed accessors; all failures
/// surface as ConfigError naming the artifact being read.
class TokenReader {
 public:
  TokenReader(std::istream& in, std::string context) : in_(in), context_(std::move(context)) {}

  std::string word() {
    std::string token;
    if (!(in_ >> token)) fail("unexpected end of file");
    return token;
  }

  void expect(const std::string& literal) {
    const std::string token = word();
    if (token != literal) fail("expected '" + literal + "', found '" + token + "'");
  }

  std::size_t count() {
    const std::string token = word();
    std::size_t value = 0;
    const auto res = std::from_chars(token.data(), token.data() + token.size(), value);
    if (res.ec != std::errc{} || res.ptr != token.data() + token.size()) {
      fail("bad count '" + token + "'");
    }
    return value;
  }

  std::int32_t integer() {
    const std::string token = word();
    std::int32_t value = 0;
    const auto res = std::from_chars(token.data(), token.data() + token.size(), value);
    if (res.ec != std::errc{} || res.ptr != token.data() + token.size()) {
      fail("bad integer '" + token + "'");
    }
    return value;
  }

  double hex() {
    const std::string token = word();
    double value = 0.0;
    const auto res = std::from_chars(token.data(), token.data() + token.size(), value,
                                     std::chars_format::hex);
    if (res.ec != std::errc{} || res.ptr != token.data() + token.size()) {
      fail("bad value '" + token + "'");
    }
    return value;
  }

  [[noreturn]] void fail(const std::string& what) const {
    throw ConfigError(context_ + ": " + what);
  }

 private:
  std::istream& in_;
  std::string context_;
};

inline std::ifstream open_model_file(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw FileNotFound("cannot open model file: " + path.string());
  return in;
}

inline void commit_file(std::ofstream& out, const std::filesystem::path& path) {
  out.flush();
  if (!out) throw ConfigError("failed writing " + path.string());
}

}  // namespace detail

inline void save_forest(std::ostream& out, const RandomForest& forest) {
  out << "forest v1\ntrees " << forest.trees.size() << '\n';
  for (const DecisionTree& tree : forest.trees) {
    out << "tree " << tree.nodes.size() << '\n';
    for (const TreeNode& n : tree.nodes) {
      out << n.feature << ' ' << n.left << ' ' << n.right << ' ' << n.sample_count << ' '
          << detail::hex_double(n.threshold) << ' ' << detail::hex_double(n.genuine_fraction)
          << '\n';
    }
  }
  out << "end\n";
}

inline RandomForest load_forest(std::istream& in, const std::string& context = "forest") {
  detail::TokenReader r(in, context);
  r.expect("forest");
  r.expect("v1");
  r.expect("trees");
  RandomForest forest;
  forest.trees.resize(r.count());
  for (DecisionTree& tree : forest.trees) {
    r.expect("tree");
    tree.nodes.resize(r.count());
    for (TreeNode& n : tree.nodes) {
      n.feature = r.integer();
      n.left = r.integer();
      n.right = r.integer();
      n.sample_count = static_cast<std::uint32_t>(r.count());
      n.threshold = r.hex();
      n.genuine_fraction = r.hex();
    }
  }
  r.expect("end");
  return forest;
}

inline void save_knn(std::ostream& out, const KnnModel& model) {
  out << "knn v1\nk " << model.k << "\nsamples " << model.train_x.size() << '\n';
  for (std::size_t i = 0; i < model.train_x.size(); ++i) {
    out << model.train_y[i];
    for (double v : model.train_x[i]) out << ' ' << detail::hex_double(v);
    out << '\n';
  }
  out << "end\n";
}

inline KnnModel load_knn(std::istream& in, const std::string& context = "knn") {
  detail::TokenReader r(in, context);
  r.expect("knn");
  r.expect("v1");
  r.expect("k");
  KnnModel model;
  model.k = r.count();
  r.expect("samples");
  const std::size_t n = r.count();
  model.train_x.resize(n);
  model.train_y.resize(n);
  for (std::size_t i = 0; i < n; ++i) {
    const std::string label = r.word();
    if (label == "0") {
      model.train_y[i] = kGenuineLabel;
    } else if (label == "1") {
      model.train_y[i] = kImposterLabel;
    } else {
      r.fail("bad label '" + label + "'");
    }
    for (double& v : model.train_x[i]) v = r.hex();
  }
  r.expect("end");
  return model;
}

inline void save_scaler(std::ostream& out, const Scaler& scaler) {
  out << "scaler v1\nmean";
  for (double v : scaler.mean) out << ' ' << detail::hex_double(v);
  out << "\nstd";
  for (double v : scaler.stdev) out << ' ' << detail::hex_double(v);
  out << "\nend\n";
}

inline Scaler load_scaler(std::istream& in, const std::string& context = "scaler") {
  detail::TokenReader r(in, context);
  r.expect("scaler");
  r.expect("v1");
  Scaler scaler;
  r.expect("mean");
  for (double& v : scaler.mean) v = r.hex();
  r.expect("std");
  for (double& v : scaler.stdev) v = r.hex();
  r.expect("end");
  return scaler;
}

inline void save_forest_file(const std::filesystem::path& path, const RandomForest& forest) {
  std::ofstream out(path);
  if (!out) throw ConfigError("cannot create " + path.string());
  save_forest(out, forest);
  detail::commit_file(out, path);
}

inline RandomForest load_forest_file(const std::filesystem::path& path) {
  std::ifstream in = detail::open_model_file(path);
  return load_forest(in, path.string());
}

inline void save_knn_file(const std::filesystem::path& path, const KnnModel& model) {
  std::ofstream out(path);
  if (!out) throw ConfigError("cannot create " + path.string());
  save_knn(out, model);
  detail::commit_file(out, path);
}

inline KnnModel load_knn_file(const std::filesystem::path& path) {
  std::ifstream in = detail::open_model_file(path);
  return load_knn(in, path.string());
}

inline void save_scaler_file(const std::filesystem::path& path, const Scaler& scaler) {
  std::ofstream out(path);
  if (!out) throw ConfigError("cannot create " + path.string());
  save_scaler(out, scaler);
  detail::commit_file(out, path);
}

inline Scaler load_scaler_file(const std::filesystem::path& path) {
  std::ifstream in = detail::open_model_file(path);
  return load_scaler(in, path.string());
}

}  // namespace touchauth
