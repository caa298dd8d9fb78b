#pragma once

#include "blockcur/aca.hpp"
#include "blockcur/blockwise.hpp"
#include "blockcur/cur.hpp"
#include "blockcur/generators.hpp"
#include "blockcur/jacobi_svd.hpp"
#include "blockcur/matrix_io.hpp"
#include "blockcur/norms.hpp"
#include "blockcur/oracle.hpp"
#include "blockcur/partition.hpp"
#include "blockcur/types.hpp"
#include "blockcur/worker_pool.hpp"
