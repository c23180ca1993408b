#include "arrfaces/errors.hpp"

namespace arrfaces {

const char* error_code_name(ErrorCode c) {
  switch (c) {
    case ErrorCode::NotSorted: return "NOT_SORTED";
    case ErrorCode::NotConvex: return "NOT_CONVEX";
    case ErrorCode::XOverlap: return "X_OVERLAP";
    case ErrorCode::NotFound: return "NOT_FOUND";
    case ErrorCode::EmptyChain: return "EMPTY_CHAIN";
    case ErrorCode::EmptyHull: return "EMPTY_HULL";
    case ErrorCode::GeneralPosition: return "GENERAL_POSITION";
    case ErrorCode::DegenerateInput: return "DEGENERATE_INPUT";
    case ErrorCode::PointOnLine: return "POINT_ON_LINE";
    case ErrorCode::PointOnDualLine: return "POINT_ON_DUAL_LINE";
    case ErrorCode::PointOnCellEdge: return "POINT_ON_CELL_EDGE";
    case ErrorCode::PointOnBoundary: return "POINT_ON_BOUNDARY";
    case ErrorCode::SegmentsIntersect: return "SEGMENTS_INTERSECT";
    case ErrorCode::HullsIntersect: return "HULLS_INTERSECT";
    case ErrorCode::ParseError: return "PARSE_ERROR";
    case ErrorCode::ParamRange: return "PARAM_RANGE";
    case ErrorCode::Internal: return "INTERNAL";
  }
  return "UNKNOWN";
}

}  // namespace arrfaces
