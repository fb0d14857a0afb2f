#ifndef EXPOSOME_TESTS_SYNTHETIC_HPP
#define EXPOSOME_TESTS_SYNTHETIC_HPP

#include "exposome/synthetic.hpp"

namespace synthetic = exposome::synthetic;

#endif
