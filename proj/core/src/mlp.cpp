#include "hcr/mlp.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <fstream>
#include <istream>
#include <ostream>
#include <sstream>
#include <string>

#include "hcr/error.hpp"
#include "random.hpp"

namespace hcr {

MlpModel::MlpModel(std::size_t n_in, std::size_t n_hidden, std::size_t n_out)
    : n_in_(n_in), n_hidden_(n_hidden), n_out_(n_out) {
  if (n_in == 0 || n_hidden == 0 || n_out == 0)
    throw Error("model dimensions must be >= 1");
  params_.assign(parameter_count(n_in, n_hidden, n_out), 0.0);
}

void MlpModel::set_params(std::span<const double> values) {
  if (values.size() != params_.size())
    throw Error("parameter vector has length " + std::to_string(values.size()) +
                ", model expects " + std::to_string(params_.size()));
  params_.assign(values.begin(), values.end());
}

bool MlpModel::all_finite() const noexcept {
  for (double v : params_)
    if (!std::isfinite(v)) return false;
  return true;
}

MlpModel init_model(std::size_t n_in, std::size_t n_hidden, std::size_t n_out,
                    std::uint64_t seed) {
  MlpModel m(n_in, n_hidden, n_out);
  detail::Rng rng(seed);
  const double r1 = 1.0 / std::sqrt(static_cast<double>(n_in));
  const double r2 = 1.0 / std::sqrt(static_cast<double>(n_hidden));
  for (std::size_t h = 0; h < n_hidden; ++h)
    for (std::size_t i = 0; i < n_in; ++i) m.w1(h, i) = rng.uniform(-r1, r1);
  for (std::size_t o = 0; o < n_out; ++o)
    for (std::size_t h = 0; h < n_hidden; ++h) m.w2(o, h) = rng.uniform(-r2, r2);
  return m;
}

double sigmoid(double z) noexcept { return 1.0 / (1.0 + std::exp(-z)); }

namespace {

struct Dims {
  std::size_t n_in, n_hidden, n_out;
};

void check_input(const Dims& d, std::span<const double> x) {
  if (x.size() != d.n_in)
    throw Error("feature length " + std::to_string(x.size()) +
                " does not match model input length " + std::to_string(d.n_in));
}

// Hidden and output activations for one input.
void forward_into(const Dims& d, std::span<const double> p,
                  std::span<const double> x, std::span<double> hidden,
                  std::span<double> out) {
  const std::size_t b1 = d.n_in * d.n_hidden;
  const std::size_t w2 = b1 + d.n_hidden;
  const std::size_t b2 = w2 + d.n_hidden * d.n_out;
  for (std::size_t h = 0; h < d.n_hidden; ++h) {
    double z = p[b1 + h];
    const double* row = p.data() + h * d.n_in;
    for (std::size_t i = 0; i < d.n_in; ++i) z += row[i] * x[i];
    hidden[h] = sigmoid(z);
  }
  for (std::size_t o = 0; o < d.n_out; ++o) {
    double z = p[b2 + o];
    const double* row = p.data() + w2 + o * d.n_hidden;
    for (std::size_t h = 0; h < d.n_hidden; ++h) z += row[h] * hidden[h];
    out[o] = sigmoid(z);
  }
}

// Shared by every loss entry point so loss values agree bit for bit whether
// or not a gradient is requested.
double batch_loss(const Dims& d, std::span<const double> p,
                  std::span<const Example> batch, std::span<double> grad) {
  if (batch.empty()) throw Error("empty batch");
  const bool want_grad = !grad.empty();
  if (want_grad) std::fill(grad.begin(), grad.end(), 0.0);
  const std::size_t b1 = d.n_in * d.n_hidden;
  const std::size_t w2 = b1 + d.n_hidden;
  const std::size_t b2 = w2 + d.n_hidden * d.n_out;
  const double scale = 1.0 / static_cast<double>(batch.size());

  std::vector<double> hidden(d.n_hidden), out(d.n_out), delta_out(d.n_out),
      delta_hidden(d.n_hidden);
  double total = 0.0;
  for (const Example& ex : batch) {
    check_input(d, ex.input);
    if (ex.label >= d.n_out) throw Error("label out of range");
    forward_into(d, p, ex.input, hidden, out);
    double sample_loss = 0.0;
    for (std::size_t o = 0; o < d.n_out; ++o) {
      const double err = out[o] - (o == ex.label ? 1.0 : 0.0);
      sample_loss += err * err;
      delta_out[o] = err * out[o] * (1.0 - out[o]) * scale;
    }
    total += 0.5 * sample_loss;
    if (!want_grad) continue;

    for (std::size_t h = 0; h < d.n_hidden; ++h) {
      double back = 0.0;
      for (std::size_t o = 0; o < d.n_out; ++o)
        back += p[w2 + o * d.n_hidden + h] * delta_out[o];
      delta_hidden[h] = back * hidden[h] * (1.0 - hidden[h]);
    }
    for (std::size_t o = 0; o < d.n_out; ++o) {
      double* row = grad.data() + w2 + o * d.n_hidden;
      for (std::size_t h = 0; h < d.n_hidden; ++h) row[h] += delta_out[o] * hidden[h];
      grad[b2 + o] += delta_out[o];
    }
    for (std::size_t h = 0; h < d.n_hidden; ++h) {
      double* row = grad.data() + h * d.n_in;
      for (std::size_t i = 0; i < d.n_in; ++i) row[i] += delta_hidden[h] * ex.input[i];
      grad[b1 + h] += delta_hidden[h];
    }
  }
  return total * scale;
}

Dims dims_of(const MlpModel& m) { return {m.n_in(), m.n_hidden(), m.n_out()}; }

}  // namespace

std::vector<double> forward(const MlpModel& m, std::span<const double> x) {
  const Dims d = dims_of(m);
  check_input(d, x);
  std::vector<double> hidden(d.n_hidden), out(d.n_out);
  forward_into(d, m.params(), x, hidden, out);
  return out;
}

double loss_at(const MlpModel& m, std::span<const double> params,
               std::span<const Example> batch, std::span<double> grad) {
  if (params.size() != m.parameter_count() ||
      (!grad.empty() && grad.size() != m.parameter_count()))
    throw Error("parameter vector length mismatch");
  return batch_loss(dims_of(m), params, batch, grad);
}

LossGradient loss_and_gradient(const MlpModel& m, std::span<const Example> batch) {
  LossGradient out;
  out.grad.resize(m.parameter_count());
  out.loss = batch_loss(dims_of(m), m.params(), batch, out.grad);
  return out;
}

double loss_only(const MlpModel& m, std::span<const Example> batch) {
  return batch_loss(dims_of(m), m.params(), batch, {});
}

std::size_t argmax(std::span<const double> values) {
  if (values.empty()) throw Error("argmax of empty vector");
  std::size_t best = 0;
  for (std::size_t i = 1; i < values.size(); ++i)
    if (values[i] > values[best]) best = i;
  return best;
}

std::size_t predict(const MlpModel& m, std::span<const double> x) {
  return argmax(forward(m, x));
}

Evaluation evaluate(const MlpModel& m, std::span<const Example> data) {
  if (data.empty()) throw Error("empty evaluation set");
  Evaluation ev;
  ev.confusion.assign(m.n_out(), std::vector<std::size_t>(m.n_out(), 0));
  for (const Example& ex : data) {
    if (ex.label >= m.n_out()) throw Error("label out of range");
    const std::size_t p = predict(m, ex.input);
    ++ev.confusion[ex.label][p];
    if (p == ex.label) ++ev.correct;
  }
  ev.total = data.size();
  ev.accuracy = static_cast<double>(ev.correct) / static_cast<double>(ev.total);
  return ev;
}

namespace {

void write_row(std::ostream& out, std::span<const double> row) {
  char buf[40];
  for (std::size_t i = 0; i < row.size(); ++i) {
    const auto res = std::to_chars(buf, buf + sizeof buf, row[i],
                                   std::chars_format::general, 17);
    if (i) out << ' ';
    out.write(buf, res.ptr - buf);
  }
  out << '\n';
}

std::vector<double> read_row(std::istream& in, std::size_t expected,
                             const char* what) {
  std::string line;
  if (!std::getline(in, line))
    throw Error(std::string("model file: missing ") + what);
  std::vector<double> values;
  const char* p = line.data();
  const char* end = p + line.size();
  while (p < end) {
    while (p < end && (*p == ' ' || *p == '\t' || *p == '\r')) ++p;
    if (p == end) break;
    double v = 0.0;
    const auto res = std::from_chars(p, end, v);
    if (res.ec != std::errc{})
      throw Error(std::string("model file: bad number in ") + what);
    values.push_back(v);
    p = res.ptr;
  }
  if (values.size() != expected)
    throw Error(std::string("model file: ") + what + " has " +
                std::to_string(values.size()) + " values, expected " +
                std::to_string(expected));
  return values;
}

}  // namespace

void save_model(std::ostream& out, const MlpModel& m) {
  out << "MLPCG 1\n" << m.n_in() << ' ' << m.n_hidden() << ' ' << m.n_out() << '\n';
  const auto p = m.params();
  for (std::size_t h = 0; h < m.n_hidden(); ++h)
    write_row(out, p.subspan(h * m.n_in(), m.n_in()));
  write_row(out, p.subspan(m.b1_offset(), m.n_hidden()));
  for (std::size_t o = 0; o < m.n_out(); ++o)
    write_row(out, p.subspan(m.w2_offset() + o * m.n_hidden(), m.n_hidden()));
  write_row(out, p.subspan(m.b2_offset(), m.n_out()));
  if (!out) throw Error("model file: write failed");
}

void save_model(const std::filesystem::path& path, const MlpModel& m) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw Error("cannot write " + path.string());
  save_model(out, m);
}

MlpModel load_model(std::istream& in) {
  std::string line;
  if (!std::getline(in, line) || (line != "MLPCG 1" && line != "MLPCG 1\r"))
    throw Error("model file: expected header 'MLPCG 1'");
  if (!std::getline(in, line)) throw Error("model file: missing dimensions");
  std::istringstream dims(line);
  long long n_in = 0, n_hidden = 0, n_out = 0;
  if (!(dims >> n_in >> n_hidden >> n_out) || n_in < 1 || n_hidden < 1 || n_out < 1)
    throw Error("model file: bad dimensions line");
  MlpModel m(static_cast<std::size_t>(n_in), static_cast<std::size_t>(n_hidden),
             static_cast<std::size_t>(n_out));
  std::vector<double> params;
  params.reserve(m.parameter_count());
  const auto append = [&](std::size_t n, const char* what) {
    const auto row = read_row(in, n, what);
    params.insert(params.end(), row.begin(), row.end());
  };
  for (std::size_t h = 0; h < m.n_hidden(); ++h) append(m.n_in(), "w1 row");
  append(m.n_hidden(), "b1");
  for (std::size_t o = 0; o < m.n_out(); ++o) append(m.n_hidden(), "w2 row");
  append(m.n_out(), "b2");
  m.set_params(params);
  if (!m.all_finite()) throw Error("model file: non-finite weight");
  return m;
}

MlpModel load_model(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error("cannot read " + path.string());
  return load_model(in);
}

}  // namespace hcr
