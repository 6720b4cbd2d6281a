#include "cytodiff/nn/tensor.hpp"

#include <cmath>
#include <numeric>
#include <sstream>

#include "cytodiff/common.hpp"

namespace cytodiff::nn {

namespace {
int64_t shape_numel(const std::vector<int>& shape) {
  int64_t n = 1;
  for (int d : shape) {
    if (d < 0) throw ConfigError("tensor shape has negative dimension");
    n *= d;
  }
  return n;
}
}  // namespace

Tensor::Tensor(std::vector<int> shape)
    : shape_(std::move(shape)), data_(static_cast<size_t>(shape_numel(shape_)), 0.0f) {}

Tensor::Tensor(std::vector<int> shape, float fill)
    : shape_(std::move(shape)), data_(static_cast<size_t>(shape_numel(shape_)), fill) {}

Tensor::Tensor(std::vector<int> shape, std::vector<float> data)
    : shape_(std::move(shape)), data_(std::move(data)) {
  if (static_cast<int64_t>(data_.size()) != shape_numel(shape_))
    throw ConfigError("tensor data length does not match shape");
}

void Tensor::fill(float v) { std::fill(data_.begin(), data_.end(), v); }

Tensor Tensor::reshaped(std::vector<int> shape) const {
  if (shape_numel(shape) != size())
    throw ConfigError("reshape changes element count: " + shape_str());
  Tensor t;
  t.shape_ = std::move(shape);
  t.data_ = data_;
  return t;
}

Tensor& Tensor::operator+=(const Tensor& o) {
  check_same_shape(*this, o, "operator+=");
  for (size_t i = 0; i < data_.size(); ++i) data_[i] += o.data_[i];
  return *this;
}

Tensor& Tensor::operator-=(const Tensor& o) {
  check_same_shape(*this, o, "operator-=");
  for (size_t i = 0; i < data_.size(); ++i) data_[i] -= o.data_[i];
  return *this;
}

Tensor& Tensor::operator*=(float s) {
  for (float& v : data_) v *= s;
  return *this;
}

bool Tensor::all_finite() const {
  for (float v : data_)
    if (!std::isfinite(v)) return false;
  return true;
}

std::string Tensor::shape_str() const {
  std::ostringstream os;
  os << '(';
  for (size_t i = 0; i < shape_.size(); ++i) {
    if (i) os << ',';
    os << shape_[i];
  }
  os << ')';
  return os.str();
}

void Tensor::check_same_shape(const Tensor& a, const Tensor& b, const char* what) {
  if (!a.same_shape(b))
    throw DataError(std::string(what) + ": shape mismatch " + a.shape_str() + " vs " +
                    b.shape_str());
}

Tensor operator+(Tensor a, const Tensor& b) { a += b; return a; }
Tensor operator-(Tensor a, const Tensor& b) { a -= b; return a; }
Tensor operator*(Tensor a, float s) { a *= s; return a; }

float dot(const Tensor& a, const Tensor& b) {
  Tensor::check_same_shape(a, b, "dot");
  double acc = 0.0;
  for (int64_t i = 0; i < a.size(); ++i) acc += double(a[i]) * double(b[i]);
  return static_cast<float>(acc);
}

float mse(const Tensor& a, const Tensor& b) {
  Tensor::check_same_shape(a, b, "mse");
  double acc = 0.0;
  for (int64_t i = 0; i < a.size(); ++i) {
    double d = double(a[i]) - double(b[i]);
    acc += d * d;
  }
  return static_cast<float>(acc / double(a.size()));
}

double l2_norm(const Tensor& a) {
  double acc = 0.0;
  for (int64_t i = 0; i < a.size(); ++i) acc += double(a[i]) * double(a[i]);
  return std::sqrt(acc);
}

double rel_l2_error(const Tensor& got, const Tensor& want) {
  Tensor::check_same_shape(got, want, "rel_l2_error");
  double num = 0.0, den = 0.0;
  for (int64_t i = 0; i < got.size(); ++i) {
    double d = double(got[i]) - double(want[i]);
    num += d * d;
    den += double(want[i]) * double(want[i]);
  }
  if (den == 0.0) return num == 0.0 ? 0.0 : std::numeric_limits<double>::infinity();
  return std::sqrt(num / den);
}

}  // namespace cytodiff::nn
