#include <erdlab/mlp.hpp>

#include <cmath>
#include <cstring>
#include <fstream>
#include <stdexcept>

namespace erdlab {

namespace {

struct LayerShape {
  long w_off;
  long b_off;
  int rows;
  int cols;
};

void check_config(const MlpConfig& c) {
  if (c.data_dim < 1 || c.embed_dim < 2 || c.hidden_dim < 1 || c.depth < 1)
    throw std::invalid_argument("MlpConfig: all dimensions must be positive");
  if (c.embed_dim % 2 != 0)
    throw std::invalid_argument("MlpConfig: embed_dim must be even (sin/cos pairs)");
}

LayerShape layer_shape(const MlpConfig& c, int layer) {
  if (layer < 0 || layer > c.depth) throw std::invalid_argument("MlpModel: layer out of range");
  long off = 0;
  for (int l = 0;; ++l) {
    const int rows = (l == c.depth) ? c.data_dim : c.hidden_dim;
    const int cols = (l == 0) ? c.in_dim() : c.hidden_dim;
    if (l == layer) return {off, off + static_cast<long>(rows) * cols, rows, cols};
    off += static_cast<long>(rows) * cols + rows;
  }
}

struct Trace {
  Matrix z0;                // in_dim x n
  std::vector<Matrix> pre;  // depth entries, hidden x n
  std::vector<Matrix> act;
  Matrix out;  // data_dim x n
};

Eigen::ArrayXXd sigmoid(const Matrix& a) { return 1.0 / (1.0 + (-a.array()).exp()); }

Trace run_forward(const MlpModel& m, const Matrix& x, const Vector& t) {
  const MlpConfig& c = m.config;
  const Eigen::Index n = x.rows();
  if (n < 1) throw std::invalid_argument("forward: empty batch");
  if (x.cols() != c.data_dim || t.size() != n)
    throw std::invalid_argument("forward: input shape mismatch");
  if (!x.allFinite() || !t.allFinite())
    throw std::invalid_argument("forward: non-finite input");

  Trace tr;
  tr.z0.resize(c.in_dim(), n);
  tr.z0.topRows(c.data_dim) = x.transpose();
  for (Eigen::Index i = 0; i < n; ++i)
    tr.z0.col(i).tail(c.embed_dim) = time_embed(t(i), c.embed_dim);

  tr.pre.resize(c.depth);
  tr.act.resize(c.depth);
  const Matrix* input = &tr.z0;
  for (int l = 0; l < c.depth; ++l) {
    tr.pre[l].noalias() = m.weight(l) * (*input);
    tr.pre[l].colwise() += m.bias(l);
    tr.act[l] = (tr.pre[l].array() * sigmoid(tr.pre[l])).matrix();
    input = &tr.act[l];
  }
  tr.out.noalias() = m.weight(c.depth) * (*input);
  tr.out.colwise() += m.bias(c.depth);
  return tr;
}

/// Accumulates d(loss)/d(params) into grad for upstream gradient g = dL/dout
/// (data_dim x n), reusing the forward trace.
void backward(const MlpModel& m, const Trace& tr, const Matrix& g, Vector& grad) {
  const MlpConfig& c = m.config;
  {
    const LayerShape sh = layer_shape(c, c.depth);
    Eigen::Map<Matrix> dw(grad.data() + sh.w_off, sh.rows, sh.cols);
    Eigen::Map<Vector> db(grad.data() + sh.b_off, sh.rows);
    dw.noalias() += g * tr.act[c.depth - 1].transpose();
    db += g.rowwise().sum();
  }
  Matrix gh = m.weight(c.depth).transpose() * g;
  for (int l = c.depth - 1; l >= 0; --l) {
    const Eigen::ArrayXXd sig = sigmoid(tr.pre[l]);
    const Matrix dl =
        (gh.array() * sig * (1.0 + tr.pre[l].array() * (1.0 - sig))).matrix();
    const LayerShape sh = layer_shape(c, l);
    Eigen::Map<Matrix> dw(grad.data() + sh.w_off, sh.rows, sh.cols);
    Eigen::Map<Vector> db(grad.data() + sh.b_off, sh.rows);
    const Matrix& input = (l == 0) ? tr.z0 : tr.act[l - 1];
    dw.noalias() += dl * input.transpose();
    db += dl.rowwise().sum();
    if (l > 0) gh.noalias() = m.weight(l).transpose() * dl;
  }
}

}  // namespace

long MlpConfig::param_count() const {
  check_config(*this);
  const LayerShape last = layer_shape(*this, depth);
  return last.b_off + last.rows;
}

Eigen::Map<Matrix> MlpModel::weight(int layer) {
  const LayerShape sh = layer_shape(config, layer);
  return {params.data() + sh.w_off, sh.rows, sh.cols};
}

Eigen::Map<const Matrix> MlpModel::weight(int layer) const {
  const LayerShape sh = layer_shape(config, layer);
  return {params.data() + sh.w_off, sh.rows, sh.cols};
}

Eigen::Map<Vector> MlpModel::bias(int layer) {
  const LayerShape sh = layer_shape(config, layer);
  return {params.data() + sh.b_off, sh.rows};
}

Eigen::Map<const Vector> MlpModel::bias(int layer) const {
  const LayerShape sh = layer_shape(config, layer);
  return {params.data() + sh.b_off, sh.rows};
}

MlpModel init(const MlpConfig& config, std::uint64_t seed) {
  check_config(config);
  MlpModel model{config, Vector(config.param_count()), seed};
  Rng rng(seed);
  for (int l = 0; l <= config.depth; ++l) {
    const LayerShape sh = layer_shape(config, l);
    const Scalar scale = std::sqrt(2.0 / sh.cols);
    for (long i = 0; i < static_cast<long>(sh.rows) * sh.cols; ++i)
      model.params(sh.w_off + i) = scale * rng.normal();
    model.params.segment(sh.b_off, sh.rows).setZero();
  }
  return model;
}

Vector time_embed(Scalar t, int embed_dim) {
  if (embed_dim < 2 || embed_dim % 2 != 0)
    throw std::invalid_argument("time_embed: embed_dim must be a positive even number");
  if (!std::isfinite(t)) throw std::invalid_argument("time_embed: non-finite t");
  const int pairs = embed_dim / 2;
  Vector e(embed_dim);
  for (int i = 0; i < pairs; ++i) {
    const Scalar omega = std::pow(10000.0, -static_cast<Scalar>(i) / pairs);
    e(2 * i) = std::sin(omega * t * 1000.0);
    e(2 * i + 1) = std::cos(omega * t * 1000.0);
  }
  return e;
}

std::pair<Vector, Vector> forward(const MlpModel& model, const Eigen::Ref<const Vector>& x,
                                  Scalar t) {
  Matrix xr(1, x.size());
  xr.row(0) = x.transpose();
  Vector tv(1);
  tv(0) = t;
  const Trace tr = run_forward(model, xr, tv);
  return {tr.out.col(0), tr.act[model.config.depth - 1].col(0)};
}

BatchOutput forward_batch(const MlpModel& model, const Matrix& x, const Vector& t) {
  const Trace tr = run_forward(model, x, t);
  return {tr.out.transpose(), tr.act[model.config.depth - 1].transpose()};
}

std::pair<Scalar, Vector> loss_grad(const MlpModel& model, const Batch& batch) {
  const Eigen::Index n = batch.x.rows();
  if (n < 1) throw std::invalid_argument("loss_grad: empty batch");
  if (batch.y.rows() != n || batch.y.cols() != model.config.data_dim || batch.w.size() != n)
    throw std::invalid_argument("loss_grad: batch shape mismatch");
  const Trace tr = run_forward(model, batch.x, batch.t);
  const Matrix r = tr.out - batch.y.transpose();
  const Scalar inv_n = 1.0 / static_cast<Scalar>(n);
  const Scalar loss =
      0.5 * inv_n * (r.colwise().squaredNorm().transpose().cwiseProduct(batch.w)).sum();
  const Matrix g = r.array().rowwise() * (batch.w.transpose().array() * inv_n);
  Vector grad = Vector::Zero(model.params.size());
  backward(model, tr, g, grad);
  return {loss, std::move(grad)};
}

Matrix param_jacobian(const MlpModel& model, const Eigen::Ref<const Vector>& x, Scalar t) {
  Matrix xr(1, x.size());
  xr.row(0) = x.transpose();
  Vector tv(1);
  tv(0) = t;
  const Trace tr = run_forward(model, xr, tv);
  const int d = model.config.data_dim;
  Matrix jac(d, model.params.size());
  Vector grad(model.params.size());
  for (int r = 0; r < d; ++r) {
    grad.setZero();
    Matrix g = Matrix::Zero(d, 1);
    g(r, 0) = 1.0;
    backward(model, tr, g, grad);
    jac.row(r) = grad.transpose();
  }
  return jac;
}

namespace {

constexpr char kMagic[8] = {'E', 'R', 'D', 'L', 'C', 'K', 'P', 'T'};
constexpr std::uint32_t kVersion = 1;
constexpr std::uint32_t kActivationSilu = 0;

template <class T>
void write_pod(std::ofstream& out, T value) {
  out.write(reinterpret_cast<const char*>(&value), sizeof(T));
}

template <class T>
T read_pod(std::ifstream& in) {
  T value{};
  in.read(reinterpret_cast<char*>(&value), sizeof(T));
  return value;
}

}  // namespace

void save_checkpoint(const MlpModel& model, const std::string& path) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw std::runtime_error("save_checkpoint: cannot open " + path);
  out.write(kMagic, sizeof(kMagic));
  write_pod<std::uint32_t>(out, kVersion);
  write_pod<std::uint32_t>(out, kActivationSilu);
  write_pod<std::uint32_t>(out, static_cast<std::uint32_t>(model.config.data_dim));
  write_pod<std::uint32_t>(out, static_cast<std::uint32_t>(model.config.embed_dim));
  write_pod<std::uint32_t>(out, static_cast<std::uint32_t>(model.config.hidden_dim));
  write_pod<std::uint32_t>(out, static_cast<std::uint32_t>(model.config.depth));
  write_pod<std::uint64_t>(out, model.seed);
  write_pod<std::uint64_t>(out, static_cast<std::uint64_t>(model.params.size()));
  out.write(reinterpret_cast<const char*>(model.params.data()),
            static_cast<std::streamsize>(model.params.size() * sizeof(Scalar)));
  if (!out) throw std::runtime_error("save_checkpoint: write failed for " + path);
}

MlpModel load_checkpoint(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw std::runtime_error("load_checkpoint: cannot open " + path);
  char magic[8];
  in.read(magic, sizeof(magic));
  if (!in || std::memcmp(magic, kMagic, sizeof(kMagic)) != 0)
    throw std::runtime_error("load_checkpoint: bad magic in " + path);
  if (read_pod<std::uint32_t>(in) != kVersion)
    throw std::runtime_error("load_checkpoint: unsupported version in " + path);
  if (read_pod<std::uint32_t>(in) != kActivationSilu)
    throw std::runtime_error("load_checkpoint: unsupported activation in " + path);
  MlpConfig config;
  config.data_dim = static_cast<int>(read_pod<std::uint32_t>(in));
  config.embed_dim = static_cast<int>(read_pod<std::uint32_t>(in));
  config.hidden_dim = static_cast<int>(read_pod<std::uint32_t>(in));
  config.depth = static_cast<int>(read_pod<std::uint32_t>(in));
  const std::uint64_t seed = read_pod<std::uint64_t>(in);
  const std::uint64_t count = read_pod<std::uint64_t>(in);
  if (!in) throw std::runtime_error("load_checkpoint: truncated header in " + path);
  if (count != static_cast<std::uint64_t>(config.param_count()))
    throw std::runtime_error("load_checkpoint: parameter count mismatch in " + path);
  MlpModel model{config, Vector(static_cast<long>(count)), seed};
  in.read(reinterpret_cast<char*>(model.params.data()),
          static_cast<std::streamsize>(count * sizeof(Scalar)));
  if (!in) throw std::runtime_error("load_checkpoint: truncated parameters in " + path);
  if (!model.params.allFinite())
    throw std::runtime_error("load_checkpoint: non-finite parameters in " + path);
  return model;
}

}  // namespace erdlab
