#include <pybind11/functional.h>
#include <pybind11/operators.h>
#include <pybind11/pybind11.h>
#include <pybind11/stl.h>
#include <pybind11/stl/filesystem.h>

#include <cmath>
#include <sstream>

#include "assocarray/assoc.hpp"
#include "assocarray/bench.hpp"
#include "assocarray/io_formats.hpp"
#include "assocarray/semiring.hpp"
#include "assocarray/sorted_sets.hpp"

namespace py = pybind11;
using namespace assocarray;

namespace {

// Explicit key marker so numeric keys can be addressed as keys, not positions.
struct KeyRef {
  Key key;
};

Key to_key(const py::handle& h) {
  if (py::isinstance<KeyRef>(h)) return h.cast<KeyRef>().key;
  if (py::isinstance<py::str>(h)) return Key(h.cast<std::string>());
  if (py::isinstance<py::bool_>(h)) throw py::type_error("bool is not a valid key");
  if (py::isinstance<py::int_>(h) || py::isinstance<py::float_>(h)) {
    const double d = h.cast<double>();
    if (std::isnan(d)) throw py::value_error("NaN is not a valid key");
    return Key(d);
  }
  throw py::type_error("keys must be str, int or float");
}

py::object from_key(const Key& k) {
  if (k.is_text()) return py::str(k.text());
  const double d = k.number();
  if (d == std::floor(d) && std::fabs(d) < 9007199254740992.0) return py::int_(static_cast<long long>(d));
  return py::float_(d);
}

py::object from_value(const Value& v) {
  if (v.index() == 0) return py::float_(std::get<double>(v));
  return py::str(std::get<std::string>(v));
}

Value to_value(const py::handle& h) {
  if (py::isinstance<py::str>(h)) return h.cast<std::string>();
  if (py::isinstance<py::int_>(h) || py::isinstance<py::float_>(h)) return h.cast<double>();
  throw py::type_error("values must be str, int or float");
}

bool is_sequence(const py::handle& h) {
  return py::isinstance<py::list>(h) || py::isinstance<py::tuple>(h);
}

std::vector<Key> to_keys(const py::handle& h) {
  std::vector<Key> out;
  if (is_sequence(h)) {
    for (auto item : h) out.push_back(to_key(item));
  } else {
    out.push_back(to_key(h));
  }
  return out;
}

py::list from_keys(const std::vector<Key>& keys) {
  py::list out;
  for (const auto& k : keys) out.append(from_key(k));
  return out;
}

ValueOp op_by_name(const std::string& name) {
  if (name == "min") return ops::min();
  if (name == "max") return ops::max();
  if (name == "sum") return ops::sum();
  if (name == "concat") return ops::concat();
  if (name == "first") return ops::first();
  if (name == "last") return ops::last();
  throw py::value_error("unknown aggregate '" + name + "' (min, max, sum, concat, first, last)");
}

NumericSemiring ring_by_name(const std::string& name) {
  if (name == "plus_times") return plus_times();
  if (name == "max_plus") return max_plus();
  if (name == "max_min") return max_min();
  throw py::value_error("unknown semiring '" + name + "' (plus_times, max_plus, max_min)");
}

Assoc construct(const py::object& rows, const py::object& cols, const py::object& vals,
                const std::string& aggregate) {
  const auto r = to_keys(rows);
  const auto c = to_keys(cols);
  std::vector<Value> v;
  if (is_sequence(vals)) {
    for (auto item : vals) v.push_back(to_value(item));
  } else {
    v.push_back(to_value(vals));
  }
  return Assoc::from_triples(r, c, std::span<const Value>(v), op_by_name(aggregate));
}

// int -> position, slice -> position slice, str "lo,:,hi," -> range,
// ":" -> all, other str / Key -> key, list -> positions (all ints) or keys.
Selector to_selector(const py::handle& h) {
  if (py::isinstance<KeyRef>(h)) return Selector::key(h.cast<KeyRef>().key);
  if (py::isinstance<py::slice>(h)) {
    const auto s = h.cast<py::slice>();
    auto bound = [](const py::object& o, index_t dflt) {
      return o.is_none() ? dflt : o.cast<index_t>();
    };
    if (!s.attr("step").is_none() && s.attr("step").cast<index_t>() != 1) {
      throw py::value_error("slice step must be 1");
    }
    return Selector::slice(bound(s.attr("start"), 0), bound(s.attr("stop"), std::numeric_limits<index_t>::max()));
  }
  if (py::isinstance<py::bool_>(h)) throw py::type_error("bool is not a valid selector");
  if (py::isinstance<py::int_>(h)) return Selector::positions({h.cast<index_t>()});
  if (py::isinstance<py::str>(h)) {
    const auto s = h.cast<std::string>();
    if (s == ":") return Selector::all();
    if (s.find(",:,") != std::string::npos) return Selector::parse_range(s);
    return Selector::key(Key(s));
  }
  if (is_sequence(h)) {
    bool all_ints = py::len(h) > 0;
    for (auto item : h) {
      all_ints = all_ints && py::isinstance<py::int_>(item) && !py::isinstance<py::bool_>(item);
    }
    if (all_ints) return Selector::positions(h.cast<std::vector<index_t>>());
    return Selector::keys(to_keys(h));
  }
  throw py::type_error("unsupported selector");
}

bool is_single_key(const py::handle& h) {
  if (py::isinstance<KeyRef>(h)) return true;
  if (!py::isinstance<py::str>(h)) return false;
  const auto s = h.cast<std::string>();
  return s != ":" && s.find(",:,") == std::string::npos;
}

py::tuple triples_tuple(const Assoc& a) {
  const Triples t = a.triples();
  py::list vals;
  if (t.is_numeric()) {
    for (double v : std::get<0>(t.vals)) vals.append(v);
  } else {
    for (const auto& v : std::get<1>(t.vals)) vals.append(v);
  }
  return py::make_tuple(from_keys(t.rows), from_keys(t.cols), vals);
}

py::dict record_dict(const bench::Record& r) {
  py::dict d;
  d["test"] = r.test;
  d["n"] = r.n;
  d["mean_seconds"] = r.mean_seconds;
  d["runs"] = r.runs;
  d["nnz_a"] = r.nnz_a;
  d["nnz_b"] = r.nnz_b;
  d["nnz_out"] = r.nnz_out;
  return d;
}

}  // namespace

PYBIND11_MODULE(_core, m) {
  m.doc() = "Sparse associative arrays with sorted string/number keys";

  py::class_<KeyRef>(m, "Key")
      .def(py::init([](const py::object& v) { return KeyRef{to_key(v)}; }), py::arg("value"))
      .def_property_readonly("value", [](const KeyRef& k) { return from_key(k.key); })
      .def("__repr__", [](const KeyRef& k) { return "Key(" + py::repr(from_key(k.key)).cast<std::string>() + ")"; });

  py::class_<Assoc>(m, "Assoc")
      .def(py::init<>())
      .def(py::init(&construct), py::arg("rows"), py::arg("cols"), py::arg("vals"), py::arg("aggregate") = "min")
      .def_property_readonly("row", [](const Assoc& a) { return from_keys(a.row()); })
      .def_property_readonly("col", [](const Assoc& a) { return from_keys(a.col()); })
      .def_property_readonly("val", [](const Assoc& a) -> py::object {
        if (a.is_numeric()) return py::none();
        return py::cast(a.val());
      })
      .def_property_readonly("adj", [](const Assoc& a) {
        const SparseMatrix& s = a.adj();
        return py::make_tuple(std::vector<index_t>(s.indptr().begin(), s.indptr().end()),
                              std::vector<index_t>(s.indices().begin(), s.indices().end()), s.values(),
                              py::make_tuple(s.nrows(), s.ncols()));
      }, "CSR adjacency as (indptr, indices, values, shape)")
      .def_property_readonly("shape", [](const Assoc& a) { return py::make_tuple(a.nrows(), a.ncols()); })
      .def_property_readonly("nnz", &Assoc::nnz)
      .def_property_readonly("is_numeric", &Assoc::is_numeric)
      .def("triples", &triples_tuple)
      .def("__getitem__", [](const Assoc& a, const py::tuple& idx) -> py::object {
        if (idx.size() != 2) throw py::index_error("expected A[rows, cols]");
        if (is_single_key(idx[0]) && is_single_key(idx[1])) {
          return from_value(a.get(to_key(idx[0]), to_key(idx[1])));
        }
        return py::cast(a.get(to_selector(idx[0]), to_selector(idx[1])));
      })
      .def("set", [](const Assoc& a, const py::object& r, const py::object& c, const py::object& v) {
        return a.set(to_key(r), to_key(c), to_value(v));
      }, py::arg("row"), py::arg("col"), py::arg("value"), "Copy with one cell replaced")
      .def("logical", &Assoc::logical)
      .def("transpose", &Assoc::transpose)
      .def_property_readonly("T", &Assoc::transpose)
      .def("check_invariants", &Assoc::check_invariants)
      .def(py::self == py::self)
      .def("__add__", [](const Assoc& a, const Assoc& b) { return add(a, b); })
      .def("__mul__", [](const Assoc& a, const Assoc& b) { return multiply_elementwise(a, b); })
      .def("__matmul__", [](const Assoc& a, const Assoc& b) { return array_product(a, b); })
      .def("__len__", &Assoc::nnz)
      .def("__repr__", [](const Assoc& a) {
        std::ostringstream s;
        s << "Assoc(" << a.nrows() << "x" << a.ncols() << ", nnz=" << a.nnz() << ", "
          << (a.is_numeric() ? "numeric" : "string") << ")";
        return s.str();
      });

  m.def("array_product", [](const Assoc& a, const Assoc& b, const std::string& ring) {
    return array_product(a, b, ring_by_name(ring));
  }, py::arg("a"), py::arg("b"), py::arg("semiring") = "plus_times");
  m.def("elementwise_min", &elementwise_min);
  m.def("elementwise_max", &elementwise_max);
  m.def("combine", [](const Assoc& a, const Assoc& b, const std::string& op) {
    return combine(a, b, op_by_name(op));
  }, py::arg("a"), py::arg("b"), py::arg("op"));

  m.def("check_axioms", [](const std::string& name, const py::list& samples) {
    AxiomReport report;
    if (name == "string") {
      report = check_axioms(string_algebra(), samples.cast<std::vector<std::string>>());
    } else {
      report = check_axioms(ring_by_name(name), samples.cast<std::vector<double>>());
    }
    std::vector<std::pair<std::string, std::string>> out;
    for (const auto& v : report) out.emplace_back(v.axiom, v.detail);
    return out;
  }, py::arg("semiring"), py::arg("samples"), "Violated (axiom, operands) pairs; empty when none");

  m.def("sorted_union", [](const py::list& a, const py::list& b) {
    auto r = sorted_union(to_keys(a), to_keys(b));
    return py::make_tuple(from_keys(r.merged), r.map_left, r.map_right);
  });
  m.def("sorted_intersection", [](const py::list& a, const py::list& b) {
    auto r = sorted_intersection(to_keys(a), to_keys(b));
    return py::make_tuple(from_keys(r.merged), r.map_left, r.map_right);
  });

  m.def("write_triples", [](const Assoc& a, const std::filesystem::path& p, char d) {
    return write_triples(a, p, d);
  }, py::arg("a"), py::arg("path"), py::arg("delimiter") = '\t');
  m.def("read_triples", [](const std::filesystem::path& p, char d, const std::string& agg, bool numeric_keys) {
    return read_triples(p, d, op_by_name(agg), numeric_keys ? KeyParse::numeric : KeyParse::text);
  }, py::arg("path"), py::arg("delimiter") = '\t', py::arg("aggregate") = "min", py::arg("numeric_keys") = false);

  m.def("generate_bench", [](int n, std::uint64_t seed) {
    const auto d = generate_bench(n, seed);
    py::dict out;
    out["n"] = d.n;
    out["rows"] = d.rows;
    out["rows2"] = d.rows2;
    out["cols"] = d.cols;
    out["cols2"] = d.cols2;
    out["num_vals"] = d.num_vals;
    out["str_vals"] = d.str_vals;
    return out;
  }, py::arg("n"), py::arg("seed") = bench::Config{}.seed);

  m.def("run_benchmarks", [](int n_min, int n_max, int reps, const std::vector<std::string>& tests,
                             std::uint64_t seed) {
    bench::Config cfg;
    cfg.n_min = n_min;
    cfg.n_max = n_max;
    cfg.repetitions = reps;
    cfg.seed = seed;
    if (!tests.empty()) {
      cfg.tests.clear();
      for (const auto& t : tests) cfg.tests.push_back(bench::parse_test(t));
    }
    std::vector<bench::Record> recs;
    {
      py::gil_scoped_release release;
      recs = bench::run_benchmarks(cfg);
    }
    py::list out;
    for (const auto& r : recs) out.append(record_dict(r));
    return out;
  }, py::arg("n_min") = 5, py::arg("n_max") = 5, py::arg("reps") = 1,
     py::arg("tests") = std::vector<std::string>{}, py::arg("seed") = bench::Config{}.seed);
}
