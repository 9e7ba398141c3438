#include "belt/io.hpp"

#include <fstream>

namespace belt {

Json mat_to_json(const Mat& m) {
  Json j;
  j["rows"] = m.rows();
  j["cols"] = m.cols();
  std::vector<double> re, im;
  re.reserve(m.size());
  im.reserve(m.size());
  for (Index i = 0; i < m.rows(); ++i)
    for (Index k = 0; k < m.cols(); ++k) {
      re.push_back(m(i, k).real());
      im.push_back(m(i, k).imag());
    }
  j["re"] = std::move(re);
  j["im"] = std::move(im);
  return j;
}

Mat mat_from_json(const Json& j) {
  const Index rows = j.at("rows").get<Index>();
  const Index cols = j.at("cols").get<Index>();
  if (rows < 1 || cols < 1) throw std::invalid_argument("matrix json: bad shape");
  const auto& re = j.at("re");
  if (!re.is_array() || Index(re.size()) != rows * cols)
    throw std::invalid_argument("matrix json: re length mismatch");
  const bool has_im = j.contains("im");
  if (has_im && Index(j.at("im").size()) != rows * cols)
    throw std::invalid_argument("matrix json: im length mismatch");
  Mat m(rows, cols);
  for (Index i = 0; i < rows; ++i)
    for (Index k = 0; k < cols; ++k) {
      const Index flat = i * cols + k;
      m(i, k) = Cplx(re.at(flat).get<double>(),
                     has_im ? j.at("im").at(flat).get<double>() : 0.0);
    }
  return m;
}

Json map_to_json(const LinearMap& m) {
  Json j;
  j["in_qubits"] = m.in_qubits;
  j["out_qubits"] = m.out_qubits;
  j["superop"] = mat_to_json(m.superop);
  return j;
}

LinearMap map_from_json(const Json& j) {
  if (j.contains("name")) {
    const std::string name = j.at("name").get<std::string>();
    const int q = j.value("qubits", 1);
    if (name == "identity") return identity_map(q);
    if (name == "transpose") return transpose_map(q);
    if (name == "reduction") return reduction_map(q);
    if (name == "reduction_x_identity") return tensor_with_identity(reduction_map(q), q);
    if (name == "depolarizing") return depolarizing(j.at("p").get<double>(), q);
    if (name == "amplitude_damping") return amplitude_damping(j.at("gamma").get<double>());
    if (name == "pauli")
      return pauli_channel(j.at("px").get<double>(), j.at("py").get<double>(),
                           j.at("pz").get<double>());
    throw std::invalid_argument("map json: unknown name '" + name + "'");
  }
  return make_map(j.at("in_qubits").get<int>(), j.at("out_qubits").get<int>(),
                  mat_from_json(j.at("superop")));
}

Json blockenc_to_json(const BlockEncoding& be) {
  Json j;
  j["alpha"] = be.alpha;
  j["m"] = be.anc_qubits;
  j["eps"] = be.eps;
  j["unitary"] = mat_to_json(be.unitary);
  j["sys_qubits"] = be.sys_qubits;
  return j;
}

BlockEncoding blockenc_from_json(const Json& j) {
  BlockEncoding be;
  be.alpha = j.at("alpha").get<double>();
  be.anc_qubits = j.at("m").get<int>();
  be.eps = j.at("eps").get<double>();
  be.unitary = mat_from_json(j.at("unitary"));
  be.sys_qubits = j.at("sys_qubits").get<int>();
  if (be.unitary.rows() != dim_of(be.anc_qubits + be.sys_qubits))
    throw std::invalid_argument("block encoding json: dimension mismatch");
  return be;
}

Json phases_to_json(const PhaseSequence& p) {
  Json j;
  j["convention"] = p.convention;
  j["phases"] = p.phases;
  return j;
}

PhaseSequence phases_from_json(const Json& j) {
  return {j.at("convention").get<std::string>(), j.at("phases").get<std::vector<double>>()};
}

Json load_json_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::invalid_argument("cannot open file: " + path);
  Json j;
  in >> j;
  return j;
}

namespace {

std::vector<double> split_params(const std::string& s) {
  std::vector<double> out;
  size_t pos = 0;
  while (pos <= s.size()) {
    const size_t comma = std::min(s.find(',', pos), s.size());
    out.push_back(std::stod(s.substr(pos, comma - pos)));
    pos = comma + 1;
  }
  return out;
}

}  // namespace

LinearMap parse_map_arg(const std::string& arg) {
  const size_t colon = arg.find(':');
  if (colon != std::string::npos) {
    const std::string head = arg.substr(0, colon);
    const std::string tail = arg.substr(colon + 1);
    try {
      if (head == "identity") return identity_map(std::stoi(tail));
      if (head == "transpose") return transpose_map(std::stoi(tail));
      if (head == "reduction") return reduction_map(std::stoi(tail));
      if (head == "redxid") {
        const int q = std::stoi(tail);
        return tensor_with_identity(reduction_map(q), q);
      }
      if (head == "dep") return depolarizing(std::stod(tail));
      if (head == "ad") return amplitude_damping(std::stod(tail));
      if (head == "pauli") {
        const auto p = split_params(tail);
        if (p.size() != 3) throw std::invalid_argument("pauli shorthand needs px,py,pz");
        return pauli_channel(p[0], p[1], p[2]);
      }
    } catch (const std::out_of_range&) {
      throw std::invalid_argument("map shorthand: parameter out of range in '" + arg + "'");
    }
  }
  return map_from_json(load_json_file(arg));
}

Mat parse_density_arg(const std::string& arg, int qubits_hint) {
  const size_t colon = arg.find(':');
  const std::string head = colon == std::string::npos ? arg : arg.substr(0, colon);
  int q = qubits_hint;
  if (colon != std::string::npos) q = std::stoi(arg.substr(colon + 1));
  if (head == "mixed" || head == "pure0") {
    if (q < 1) throw std::invalid_argument("density shorthand: unknown qubit count");
    const Index d = dim_of(q);
    if (head == "mixed") return Mat::Identity(d, d) / double(d);
    Mat rho = Mat::Zero(d, d);
    rho(0, 0) = 1.0;
    return rho;
  }
  return mat_from_json(load_json_file(arg));
}

}  // namespace belt
