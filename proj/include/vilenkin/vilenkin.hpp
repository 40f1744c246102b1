#pragma once

#include "vilenkin/cyclotomic.hpp"
#include "vilenkin/error.hpp"
#include "vilenkin/group.hpp"
#include "vilenkin/hardy.hpp"
#include "vilenkin/kernels.hpp"
#include "vilenkin/means.hpp"
#include "vilenkin/parallel.hpp"
#include "vilenkin/transform.hpp"
