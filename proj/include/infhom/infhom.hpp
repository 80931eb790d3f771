#pragma once

#include "infhom/rational.hpp"
#include "infhom/linalg.hpp"
#include "infhom/tensors.hpp"
#include "infhom/subalgebra.hpp"
#include "infhom/torsion.hpp"
#include "infhom/conditions.hpp"
#include "infhom/lie_builder.hpp"
#include "infhom/realizer.hpp"
#include "infhom/instance_io.hpp"
