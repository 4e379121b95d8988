#pragma once

#include "spinor_lab/cli.hpp"
#include "spinor_lab/diffop.hpp"
#include "spinor_lab/json_io.hpp"
#include "spinor_lab/kaplansky.hpp"
#include "spinor_lab/structures.hpp"
#include "spinor_lab/walsh_transform.hpp"
