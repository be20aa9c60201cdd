"""Dependency injection container for the command line"""

from dependency_injector import containers, providers

from services.shared.bh_logging_lib.logger_factory import LoggerFactory
from services.shared.bh_utilities.settings import load_settings


class Container(containers.DeclarativeContainer):
    """Application container for dependency injection"""

    settings = providers.Singleton(load_settings)

    surface_service = providers.Factory(
        "services.surface_service.app.services.surface_info.SurfaceService",
        logger=providers.Factory(LoggerFactory.create_logger_for, logger_name="SurfaceService"),
    )

    curve_service = providers.Factory(
        "services.surface_service.app.services.curve_service.CurveService",
        logger=providers.Factory(LoggerFactory.create_logger_for, logger_name="SurfaceService"),
    )

    enumeration_service = providers.Factory(
        "services.surface_service.app.services.enumeration_service.EnumerationService",
        logger=providers.Factory(LoggerFactory.create_logger_for, logger_name="EnumerationService"),
        settings=settings.provided.enumeration,
    )

    metric_service = providers.Factory(
        "services.metrics_service.app.services.metric_service.MetricService",
        logger=providers.Factory(LoggerFactory.create_logger_for, logger_name="MetricService"),
    )

    mapping_class_service = providers.Factory(
        "services.metrics_service.app.services.mapping_class_service.MappingClassService",
        logger=providers.Factory(LoggerFactory.create_logger_for, logger_name="MappingClassService"),
        settings=settings.provided.stable,
    )

    limit_service = providers.Factory(
        "services.limits_service.app.services.limit_service.LimitService",
        logger=providers.Factory(LoggerFactory.create_logger_for, logger_name="LimitService"),
        settings=settings.provided.limits,
        metric_service=metric_service,
        mapping_class_service=mapping_class_service,
    )

    mlt_service = providers.Factory(
        "services.mlt_service.app.services.mlt_service.MltService",
        logger=providers.Factory(LoggerFactory.create_logger_for, logger_name="MltService"),
        settings=settings.provided.limits,
        limit_service=limit_service,
    )

    boundary_service = providers.Singleton(
        "services.boundary_service.app.services.boundary_service.BoundaryService",
        logger=providers.Factory(LoggerFactory.create_logger_for, logger_name="BoundaryService"),
        settings=settings.provided.boundary,
        enumeration_settings=settings.provided.enumeration,
        mapping_class_service=mapping_class_service,
        enumeration_service=enumeration_service,
    )

    scenario_service = providers.Factory(
        "services.cli_service.app.services.scenario_service.ScenarioService",
        logger=providers.Factory(LoggerFactory.create_logger_for, logger_name="ScenarioService"),
        surface_service=surface_service,
        curve_service=curve_service,
    )


class ServiceFactory:
    """Factory class for accessing services from the container"""

    _container = None

    @classmethod
    def get_container(cls):
        """Get or create the container instance"""
        if cls._container is None:
            cls._container = Container()
        return cls._container

    @classmethod
    def get_settings(cls):
        return cls.get_container().settings()

    @classmethod
    def get_surface_service(cls):
        return cls.get_container().surface_service()

    @classmethod
    def get_curve_service(cls):
        return cls.get_container().curve_service()

    @classmethod
    def get_enumeration_service(cls):
        return cls.get_container().enumeration_service()

    @classmethod
    def get_metric_service(cls):
        return cls.get_container().metric_service()

    @classmethod
    def get_limit_service(cls, settings=None):
        container = cls.get_container()
        if settings is None:
            return container.limit_service()
        return container.limit_service(settings=settings)

    @classmethod
    def get_mlt_service(cls, settings=None):
        """MLT engine whose limit service runs with the same settings"""
        container = cls.get_container()
        if settings is None:
            return container.mlt_service()
        return container.mlt_service(settings=settings, limit_service=container.limit_service(settings=settings))

    @classmethod
    def get_boundary_service(cls):
        return cls.get_container().boundary_service()

    @classmethod
    def get_scenario_service(cls):
        return cls.get_container().scenario_service()
