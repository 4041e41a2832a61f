"""
Serializers for graph and spline documents.
"""
from rest_framework import serializers


class EdgeSerializer(serializers.Serializer):
    """
    Serializer for one labeled edge.
    """
    u = serializers.IntegerField(min_value=1)
    v = serializers.IntegerField(min_value=1)
    label = serializers.CharField(trim_whitespace=False)


class GraphDocumentSerializer(serializers.Serializer):
    """
    Serializer for a graph document.
    """
    ring = serializers.CharField()
    vertices = serializers.IntegerField(min_value=1)
    edges = EdgeSerializer(many=True, allow_empty=True)


class SplineDocumentSerializer(serializers.Serializer):
    """
    Serializer for a spline document; values are listed f_1 first.
    """
    values = serializers.ListField(child=serializers.CharField(trim_whitespace=False), allow_empty=False)


class GraphRequestSerializer(serializers.Serializer):
    """
    Serializer for requests that only carry a graph.
    """
    graph = serializers.DictField()


class IndexedGraphRequestSerializer(GraphRequestSerializer):
    index = serializers.IntegerField(min_value=1)


class TrailsRequestSerializer(GraphRequestSerializer):
    """
    Serializer for constraint path requests.
    """
    vertex = serializers.IntegerField(min_value=1)
    flow_index = serializers.IntegerField(min_value=1, required=False)


class BasisRequestSerializer(GraphRequestSerializer):
    jobs = serializers.IntegerField(min_value=1, required=False)


class CheckRequestSerializer(GraphRequestSerializer):
    """
    Serializer for spline membership checks.
    """
    spline = serializers.DictField()


class CheckBasisRequestSerializer(GraphRequestSerializer):
    """
    Serializer for basis checks; the candidate list uses the basis output layout.
    """
    splines = serializers.ListField(child=serializers.DictField(), allow_empty=True)
    determinant = serializers.BooleanField(default=False)


class DecomposeRequestSerializer(GraphRequestSerializer):
    spline = serializers.DictField()


class CycleRequestSerializer(IndexedGraphRequestSerializer):
    """
    Serializer for cycle flow-up requests.
    """
    method = serializers.ChoiceField(choices=['general', 'formula', 'ordered', 'compare'], default='compare')


class FlowUpClassSerializer(serializers.Serializer):
    """
    Serializer for one flow-up class in a response.
    """
    index = serializers.IntegerField()
    leading = serializers.CharField()
    values = serializers.ListField(child=serializers.CharField())


class BasisResponseSerializer(serializers.Serializer):
    """
    Serializer for a flow-up basis response.
    """
    ring = serializers.CharField()
    classes = FlowUpClassSerializer(many=True)
    q = serializers.CharField()


class ConstraintPathSerializer(serializers.Serializer):
    source = serializers.IntegerField()
    target = serializers.IntegerField()
    vertices = serializers.ListField(child=serializers.IntegerField())
    labels = serializers.ListField(child=serializers.CharField())
    gcd = serializers.CharField()


class TrailsResponseSerializer(serializers.Serializer):
    vertex = serializers.IntegerField()
    paths = ConstraintPathSerializer(many=True)
