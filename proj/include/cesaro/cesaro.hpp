#pragma once

#include "cesaro/errors.hpp"
#include "cesaro/specfun.hpp"
#include "cesaro/kernel.hpp"
#include "cesaro/hadamard.hpp"
#include "cesaro/bounds.hpp"
#include "cesaro/dirichlet.hpp"
#include "cesaro/sweep.hpp"
