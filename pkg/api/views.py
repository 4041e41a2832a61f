import hashlib
import json
import logging

from django.conf import settings
from django.core.cache import cache
from drf_yasg import openapi
from drf_yasg.utils import swagger_auto_schema
from rest_framework import status
from rest_framework.decorators import api_view, permission_classes, throttle_classes
from rest_framework.permissions import AllowAny
from rest_framework.response import Response
from rest_framework.throttling import AnonRateThrottle, UserRateThrottle

from utils import rendering
from utils.cycle import compare_methods, cycle_flowup
from utils.exceptions import DomainError, InputError, SchemaError
from utils.flowup import FlowUpBuilder, decompose, determinant_criterion, is_flowup_basis
from utils.graph import is_spline, load_graph, load_spline, save_graph
from utils.ring import print_elem
from utils.trails import TrailEnumerator
from .serializers import (
    BasisRequestSerializer,
    BasisResponseSerializer,
    CheckBasisRequestSerializer,
    CheckRequestSerializer,
    CycleRequestSerializer,
    DecomposeRequestSerializer,
    FlowUpClassSerializer,
    GraphRequestSerializer,
    IndexedGraphRequestSerializer,
    TrailsRequestSerializer,
    TrailsResponseSerializer,
)

# Configure logging
logger = logging.getLogger(__name__)

ERROR_RESPONSES = {
    400: "Malformed document, element or graph",
    422: "Well-formed input with no mathematical answer",
}


def _validated(serializer_class, request):
    serializer = serializer_class(data=request.data)
    if not serializer.is_valid():
        raise SchemaError(serializer.errors)
    return serializer.validated_data


def _error_response(e: Exception, action: str) -> Response:
    if isinstance(e, InputError):
        logger.error(f"Rejected {action} request: {e}")
        code = status.HTTP_400_BAD_REQUEST
    else:
        logger.error(f"Failed to {action}: {e}")
        code = status.HTTP_422_UNPROCESSABLE_ENTITY
    payload = {'error': str(e), 'type': type(e).__name__}
    errors = getattr(e, 'errors', None)
    if errors is not None:
        payload['details'] = errors
    return Response(payload, status=code)


def basis_cache_key(graph) -> str:
    canonical = json.dumps(save_graph(graph), sort_keys=True, separators=(',', ':'))
    return f"splines_basis_{hashlib.sha256(canonical.encode('utf-8')).hexdigest()}"


def cached_basis_document(graph, jobs: int = 1):
    """
    Basis document of a graph, computed once per canonical graph document.
    """
    cache_key = basis_cache_key(graph)
    document = cache.get(cache_key)
    if document:
        logger.info("Basis retrieved from cache")
        return document

    basis = FlowUpBuilder(graph).build_basis(jobs)
    document = rendering.basis_dict(basis)
    cache.set(cache_key, document, getattr(settings, 'SPLINES_CACHE_TIMEOUT', 3600))
    return document


@swagger_auto_schema(
    method='post',
    operation_description="Check whether a vertex labeling is a spline on the graph",
    request_body=CheckRequestSerializer,
    responses={200: "Spline verdict and violated edges", **ERROR_RESPONSES},
    tags=['splines']
)
@api_view(['POST'])
@permission_classes([AllowAny])
@throttle_classes([AnonRateThrottle, UserRateThrottle])
def check(request):
    """
    Check the spline condition on every edge.

    Args:
        request: HTTP request with a graph document and a spline document.

    Returns:
        JSON response with the verdict and the violated edges.
    """
    try:
        data = _validated(CheckRequestSerializer, request)
        graph = load_graph(data['graph'])
        result = is_spline(graph, load_spline(data['spline'], graph.ring))
        return Response(rendering.check_dict(result))
    except (InputError, DomainError) as e:
        return _error_response(e, 'check spline')


@swagger_auto_schema(
    method='post',
    operation_description="List the constraint paths from a vertex",
    request_body=TrailsRequestSerializer,
    responses={
        200: openapi.Response(description="Constraint paths", schema=TrailsResponseSerializer),
        **ERROR_RESPONSES,
    },
    tags=['trails']
)
@api_view(['POST'])
@permission_classes([AllowAny])
@throttle_classes([AnonRateThrottle, UserRateThrottle])
def trails(request):
    try:
        data = _validated(TrailsRequestSerializer, request)
        graph = load_graph(data['graph'])
        paths = TrailEnumerator().constraint_paths(graph, data['vertex'])
        return Response(rendering.trails_dict(data['vertex'], paths))
    except (InputError, DomainError) as e:
        return _error_response(e, 'enumerate constraint paths')


@swagger_auto_schema(
    method='post',
    operation_description="Build the flow-up class of an index with the smallest leading entry",
    request_body=IndexedGraphRequestSerializer,
    responses={
        200: openapi.Response(description="Flow-up class", schema=FlowUpClassSerializer),
        **ERROR_RESPONSES,
    },
    tags=['flow-up']
)
@api_view(['POST'])
@permission_classes([AllowAny])
@throttle_classes([AnonRateThrottle, UserRateThrottle])
def flowup(request):
    try:
        data = _validated(IndexedGraphRequestSerializer, request)
        graph = load_graph(data['graph'])
        flowup_class = FlowUpBuilder(graph).build_flowup(data['index'])
        return Response(rendering.flowup_dict(flowup_class))
    except (InputError, DomainError) as e:
        return _error_response(e, 'build flow-up class')


@swagger_auto_schema(
    method='post',
    operation_description="Build the flow-up basis of the spline module and its Q_G",
    request_body=BasisRequestSerializer,
    responses={
        200: openapi.Response(description="Flow-up basis", schema=BasisResponseSerializer),
        **ERROR_RESPONSES,
    },
    tags=['flow-up']
)
@api_view(['POST'])
@permission_classes([AllowAny])
@throttle_classes([AnonRateThrottle, UserRateThrottle])
def basis(request):
    """
    Build the flow-up basis.

    Results are cached per canonical graph document, so reordered edge lists share
    one cache entry.

    Args:
        request: HTTP request with a graph document and optional worker count.

    Returns:
        JSON response with the classes F^(1)..F^(n) and Q_G.
    """
    try:
        data = _validated(BasisRequestSerializer, request)
        graph = load_graph(data['graph'])
        jobs = data.get('jobs') or getattr(settings, 'SPLINES_JOBS', 1)
        return Response(cached_basis_document(graph, jobs))
    except (InputError, DomainError) as e:
        return _error_response(e, 'build flow-up basis')


@swagger_auto_schema(
    method='post',
    operation_description="Check whether candidate splines form a flow-up basis",
    request_body=CheckBasisRequestSerializer,
    responses={200: "Basis verdict and mismatches", **ERROR_RESPONSES},
    tags=['flow-up']
)
@api_view(['POST'])
@permission_classes([AllowAny])
@throttle_classes([AnonRateThrottle, UserRateThrottle])
def check_basis(request):
    try:
        data = _validated(CheckBasisRequestSerializer, request)
        graph = load_graph(data['graph'])
        candidate = [load_spline(member, graph.ring) for member in data['splines']]
        report = is_flowup_basis(graph, candidate)
        determinant = determinant_criterion(graph, candidate) if data['determinant'] else None
        return Response(rendering.basis_report_dict(report, determinant))
    except (InputError, DomainError) as e:
        return _error_response(e, 'check flow-up basis')


@swagger_auto_schema(
    method='post',
    operation_description="Coefficients of a spline in the flow-up basis",
    request_body=DecomposeRequestSerializer,
    responses={200: "Coefficients c_1..c_n", **ERROR_RESPONSES},
    tags=['flow-up']
)
@api_view(['POST'])
@permission_classes([AllowAny])
@throttle_classes([AnonRateThrottle, UserRateThrottle])
def decompose_spline(request):
    try:
        data = _validated(DecomposeRequestSerializer, request)
        graph = load_graph(data['graph'])
        spline = load_spline(data['spline'], graph.ring)
        coefficients = decompose(graph, FlowUpBuilder(graph).build_basis(), spline)
        return Response(rendering.coefficients_dict(coefficients))
    except (InputError, DomainError) as e:
        return _error_response(e, 'decompose spline')


@swagger_auto_schema(
    method='post',
    operation_description="Flow-up class on a cycle by the general construction, the contracted-cycle "
                          "formula or the ordered-cycle recurrence; 'compare' runs all applicable methods",
    request_body=CycleRequestSerializer,
    responses={200: "Flow-up class or method comparison", **ERROR_RESPONSES},
    tags=['cycles']
)
@api_view(['POST'])
@permission_classes([AllowAny])
@throttle_classes([AnonRateThrottle, UserRateThrottle])
def cycle(request):
    try:
        data = _validated(CycleRequestSerializer, request)
        graph = load_graph(data['graph'])
        if data['method'] == 'compare':
            return Response(rendering.comparison_dict(compare_methods(graph, data['index'])))
        return Response(rendering.flowup_dict(cycle_flowup(graph, data['index'], data['method'])))
    except (InputError, DomainError) as e:
        return _error_response(e, 'build cycle flow-up class')


@swagger_auto_schema(
    method='post',
    operation_description="Q_G, the product of the smallest leading entries",
    request_body=GraphRequestSerializer,
    responses={200: "Q_G", **ERROR_RESPONSES},
    tags=['flow-up']
)
@api_view(['POST'])
@permission_classes([AllowAny])
@throttle_classes([AnonRateThrottle, UserRateThrottle])
def qelem(request):
    try:
        data = _validated(GraphRequestSerializer, request)
        graph = load_graph(data['graph'])
        return Response({'q': print_elem(FlowUpBuilder(graph).q_element())})
    except (InputError, DomainError) as e:
        return _error_response(e, 'compute Q_G')
