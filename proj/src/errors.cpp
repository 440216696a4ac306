#include "ouc/errors.hpp"

#include <sstream>

namespace ouc {

namespace {

std::string describe_pole(std::complex<double> s) {
  std::ostringstream os;
  os.precision(17);
  os << "evaluation at a pole: s = " << s.real() << (s.imag() < 0 ? " - " : " + ")
     << std::abs(s.imag()) << "i";
  return os.str();
}

}  // namespace

PoleError::PoleError(std::complex<double> s) : std::domain_error(describe_pole(s)), s_(s) {}

IllConditionedError::IllConditionedError(const std::string& what, double condition)
    : std::runtime_error(what), condition_(condition) {}

DivergenceError::DivergenceError(const std::string& what, double time)
    : std::runtime_error(what), time_(time) {}

InstabilityError::InstabilityError(const std::string& what, double margin)
    : std::runtime_error(what), margin_(margin) {}

SynthesisError::SynthesisError(std::string step, const std::string& what)
    : std::runtime_error(step + ": " + what), step_(std::move(step)) {}

}  // namespace ouc
