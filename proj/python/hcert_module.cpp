// Python bindings: each command returns its JSON document as a string plus the CLI exit code.
#include <optional>
#include <string>
#include <vector>

#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include "hcert/config.hpp"
#include "hcert/errors.hpp"
#include "hcert/report.hpp"

namespace py = pybind11;

namespace {

py::tuple run(const std::string& command, const std::string& config_text, const std::string& origin,
              std::optional<std::vector<double>> rho, const std::string& csv_dir, bool timestamp) {
  hcert::ProblemConfig cfg = hcert::parse_config(config_text, origin);
  hcert::RunContext ctx;
  ctx.config_path = origin;
  ctx.config_text = config_text;
  ctx.rho = std::move(rho);
  ctx.csv_dir = csv_dir;
  ctx.timestamp = timestamp;
  hcert::CommandResult res;
  {
    py::gil_scoped_release release;
    if (command == "constants")
      res = hcert::run_constants(cfg, ctx);
    else if (command == "check-index")
      res = hcert::run_check_index(cfg, ctx);
    else if (command == "certify")
      res = hcert::run_certify(cfg, ctx);
    else if (command == "solve")
      res = hcert::run_solve(cfg, ctx);
    else if (command == "report")
      res = hcert::run_report(cfg, ctx);
    else
      throw hcert::Error(hcert::ErrorCode::InvalidArgument, "run", "unknown command '" + command + "'");
  }
  return py::make_tuple(res.document.dump(), res.exit_code, res.csv_files);
}

}  // namespace

PYBIND11_MODULE(_core, m) {
  m.doc() = "Fixed-point certificates for perturbed Hammerstein equations";
  static py::exception<hcert::Error> error(m, "HcertError", PyExc_RuntimeError);
  py::register_exception_translator([](std::exception_ptr p) {
    try {
      if (p) std::rethrow_exception(p);
    } catch (const hcert::Error& e) {
      py::object exc = py::handle(error.ptr())(e.what());
      exc.attr("code") = hcert::to_string(e.code());
      exc.attr("where") = e.where();
      PyErr_SetObject(error.ptr(), exc.ptr());
    }
  });
  m.def("run", &run, py::arg("command"), py::arg("config_text"), py::arg("origin") = "<string>",
        py::arg("rho") = py::none(), py::arg("csv_dir") = "", py::arg("timestamp") = false);
  m.def("normalize_config",
        [](const std::string& text) { return hcert::serialize_config(hcert::parse_config(text)); },
        py::arg("config_text"));
  m.def("config_hash", &hcert::fnv1a_hex, py::arg("text"));
  m.attr("__version__") = hcert::kToolVersion;
}
