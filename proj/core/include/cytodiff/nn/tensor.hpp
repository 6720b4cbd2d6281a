#pragma once

#include <cstdint>
#include <string>
#include <vector>

namespace cytodiff::nn {

// Dense row-major float tensor. Shapes are small (images, latents, weight
// matrices), so a plain vector plus shape bookkeeping is all we need.
class Tensor {
 public:
  Tensor() = default;
  explicit Tensor(std::vector<int> shape);
  Tensor(std::vector<int> shape, float fill);
  Tensor(std::vector<int> shape, std::vector<float> data);

  static Tensor zeros(std::vector<int> shape) { return Tensor(std::move(shape)); }
  static Tensor full(std::vector<int> shape, float v) { return Tensor(std::move(shape), v); }

  const std::vector<int>& shape() const { return shape_; }
  int dim(int i) const { return shape_.at(static_cast<size_t>(i)); }
  int rank() const { return static_cast<int>(shape_.size()); }
  int64_t size() const { return static_cast<int64_t>(data_.size()); }
  bool empty() const { return data_.empty(); }

  float* data() { return data_.data(); }
  const float* data() const { return data_.data(); }
  std::vector<float>& vec() { return data_; }
  const std::vector<float>& vec() const { return data_; }

  float& operator[](int64_t i) { return data_[static_cast<size_t>(i)]; }
  float operator[](int64_t i) const { return data_[static_cast<size_t>(i)]; }

  // (c, h, w) accessors for 3-D tensors.
  float& at(int c, int h, int w) {
    return data_[static_cast<size_t>((c * shape_[1] + h) * shape_[2] + w)];
  }
  float at(int c, int h, int w) const {
    return data_[static_cast<size_t>((c * shape_[1] + h) * shape_[2] + w)];
  }

  void fill(float v);
  Tensor reshaped(std::vector<int> shape) const;

  Tensor& operator+=(const Tensor& o);
  Tensor& operator-=(const Tensor& o);
  Tensor& operator*=(float s);

  bool same_shape(const Tensor& o) const { return shape_ == o.shape_; }
  bool all_finite() const;
  std::string shape_str() const;

  // Throws ShapeError-flavoured cytodiff::DataError when shapes differ.
  static void check_same_shape(const Tensor& a, const Tensor& b, const char* what);

 private:
  std::vector<int> shape_;
  std::vector<float> data_;
};

Tensor operator+(Tensor a, const Tensor& b);
Tensor operator-(Tensor a, const Tensor& b);
Tensor operator*(Tensor a, float s);

float dot(const Tensor& a, const Tensor& b);
float mse(const Tensor& a, const Tensor& b);
double l2_norm(const Tensor& a);
double rel_l2_error(const Tensor& got, const Tensor& want);

}  // namespace cytodiff::nn
