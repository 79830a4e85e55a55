"""JSON-over-HTTP surface, versioned under /api/v1.

Every modeled failure surfaces as {code, message, details?} with a
status matching its class (auth 401, not-found 404, validation 422,
upstream 502). All routes except login require a bearer token, carried
in the Authorization header or the session cookie.
"""

from __future__ import annotations

from fastapi import Depends, FastAPI, Request, Response
from fastapi.middleware.cors import CORSMiddleware
from fastapi.responses import JSONResponse
from pydantic import BaseModel, Field

from .auth import Session
from .errors import InvalidToken, LeoError
from .service import EndpointSpec, Service

SESSION_COOKIE = "leo_session"


class LoginBody(BaseModel):
    username: str
    password: str
    instance_id: str | None = None


class InstanceBody(BaseModel):
    display_name: str
    kind: str
    host: str
    api_key: str | None = None


class EndpointBody(BaseModel):
    instance_id: str
    origin_id: str
    element_type: str

    def to_spec(self) -> EndpointSpec:
        return EndpointSpec(self.instance_id, self.origin_id, self.element_type)


class LinkBody(BaseModel):
    endpoints: list[EndpointBody]


class PopulateBody(BaseModel):
    table_index: int = Field(ge=0)
    target: EndpointBody


def create_app(service: Service) -> FastAPI:
    app = FastAPI(
        title="leo",
        version="0.1.0",
        openapi_url="/api/v1/openapi",
        docs_url="/api/v1/docs",
    )
    if service.config.cors_origins:
        app.add_middleware(
            CORSMiddleware,
            allow_origins=service.config.cors_origins,
            allow_credentials=True,
            allow_methods=["*"],
            allow_headers=["*"],
        )

    @app.exception_handler(LeoError)
    async def leo_error_handler(request: Request, exc: LeoError):
        return JSONResponse(status_code=exc.status, content=exc.to_payload())

    def current_session(request: Request) -> Session:
        header = request.headers.get("authorization", "")
        token = header.removeprefix("Bearer ").strip() if header else ""
        if not token:
            token = request.cookies.get(SESSION_COOKIE, "")
        if not token:
            raise InvalidToken("request carries no session token")
        return service.authorize(token)

    def request_token(request: Request) -> str:
        header = request.headers.get("authorization", "")
        token = header.removeprefix("Bearer ").strip() if header else ""
        return token or request.cookies.get(SESSION_COOKIE, "")

    # -- auth ---------------------------------------------------------------

    @app.post("/api/v1/login")
    def login(body: LoginBody, response: Response):
        token = service.login(body.username, body.password, body.instance_id)
        response.set_cookie(SESSION_COOKIE, token, httponly=True, samesite="lax")
        return {"token": token, "username": body.username}

    @app.post("/api/v1/logout", status_code=204)
    def logout(request: Request, response: Response):
        service.logout(request_token(request))
        response.delete_cookie(SESSION_COOKIE)

    # -- instances ------------------------------------------------------------

    @app.get("/api/v1/instances")
    def list_instances(session: Session = Depends(current_session)):
        return {
            "instances": [i.to_json() for i in service.list_instances(session)],
            "providers": [d.to_json() for d in service.registry.descriptors()],
        }

    @app.post("/api/v1/instances", status_code=201)
    def create_instance(body: InstanceBody, session: Session = Depends(current_session)):
        instance = service.create_instance(
            session,
            display_name=body.display_name,
            kind=body.kind,
            host=body.host,
            api_key=body.api_key,
        )
        return instance.to_json()

    @app.delete("/api/v1/instances/{instance_id}", status_code=204)
    def delete_instance(instance_id: str, cascade: bool = False,
                        session: Session = Depends(current_session)):
        service.delete_instance(session, instance_id, cascade=cascade)

    @app.get("/api/v1/instances/{instance_id}/elements")
    def instance_elements(instance_id: str, session: Session = Depends(current_session)):
        return service.instance_elements(session, instance_id).to_json()

    # -- links ----------------------------------------------------------------

    @app.post("/api/v1/links", status_code=201)
    def create_link(body: LinkBody, session: Session = Depends(current_session)):
        link = service.create_link(session, [e.to_spec() for e in body.endpoints])
        return link.to_json()

    @app.get("/api/v1/links")
    def list_links(session: Session = Depends(current_session)):
        return {"links": service.list_links(session)}

    @app.get("/api/v1/links/{link_id}")
    def link_detail(link_id: str, session: Session = Depends(current_session)):
        return service.link_detail(session, link_id)

    @app.delete("/api/v1/links/{link_id}", status_code=204)
    def delete_link(link_id: str, session: Session = Depends(current_session)):
        service.delete_link(session, link_id)

    # -- population -------------------------------------------------------------

    @app.get("/api/v1/links/{link_id}/tables")
    def link_tables(link_id: str, session: Session = Depends(current_session)):
        extraction = service.link_tables(session, link_id)
        return {"tables": [entry.to_json() for entry in extraction.entries()]}

    @app.post("/api/v1/links/{link_id}/populate")
    def populate(link_id: str, body: PopulateBody,
                 session: Session = Depends(current_session)):
        report = service.populate(session, link_id, body.table_index, body.target.to_spec())
        return report.to_json()

    return app
