import type {
  BrushSetJson,
  DatasetInfoJson,
  GaugeJson,
  OverlayJson,
  RepresentativesJson,
  SelectionJson,
  SideName,
  TableAggregateJson,
  TableId,
  TimelineResponseJson,
} from "./types.js";

type FetchLike = (url: string, init?: RequestInit) => Promise<Response>;

export class ServiceError extends Error {
  constructor(public status: number, detail: string) {
    super(detail);
  }
}

/** Thin typed client over the query service; fetch is injectable for tests. */
export class ServiceClient {
  constructor(private baseUrl: string,
              private fetchImpl: FetchLike = (u, i) => fetch(u, i)) {}

  private async get<T>(path: string): Promise<T> {
    const resp = await this.fetchImpl(this.baseUrl + path);
    if (!resp.ok) {
      throw new ServiceError(resp.status, await resp.text());
    }
    return resp.json() as Promise<T>;
  }

  listDatasets(): Promise<{ datasets: DatasetInfoJson[] }> {
    return this.get("/datasets");
  }

  summary(dataset: string): Promise<any> {
    return this.get(`/datasets/${dataset}/summary`);
  }

  table(dataset: string, table: TableId, side: SideName,
        session?: string | null): Promise<OverlayJson<TableAggregateJson>> {
    const q = session ? `&session=${session}` : "";
    return this.get(`/datasets/${dataset}/tables/${table}?side=${side}${q}`);
  }

  gauge(dataset: string, joint: string,
        session?: string | null): Promise<OverlayJson<GaugeJson>> {
    const q = session ? `?session=${session}` : "";
    return this.get(`/datasets/${dataset}/gauge/${joint}${q}`);
  }

  timeline(dataset: string, joints: string[], maxPoints: number,
           t0?: number, t1?: number,
           session?: string | null): Promise<TimelineResponseJson> {
    let q = `?joints=${joints.join(",")}&max_points=${maxPoints}`;
    if (t0 !== undefined) q += `&t0=${t0}`;
    if (t1 !== undefined) q += `&t1=${t1}`;
    if (session) q += `&session=${session}`;
    return this.get(`/datasets/${dataset}/timeline${q}`);
  }

  representatives(dataset: string, table: TableId,
                  side: SideName): Promise<RepresentativesJson> {
    return this.get(`/datasets/${dataset}/representatives?table=${table}&side=${side}`);
  }

  imageUrl(dataset: string, frame: number): string {
    return `${this.baseUrl}/datasets/${dataset}/frames/${frame}/image`;
  }

  async createSession(dataset: string): Promise<string> {
    const resp = await this.fetchImpl(`${this.baseUrl}/sessions`, {
      method: "POST",
      headers: { "content-type": "application/json" },
      body: JSON.stringify({ dataset_id: dataset }),
    });
    if (!resp.ok) throw new ServiceError(resp.status, await resp.text());
    const data = await resp.json();
    return data.session_id as string;
  }

  async putBrushes(session: string, brushSet: BrushSetJson):
      Promise<{ selection_count: number }> {
    const resp = await this.fetchImpl(`${this.baseUrl}/sessions/${session}/brushes`, {
      method: "PUT",
      headers: { "content-type": "application/json" },
      body: JSON.stringify(brushSet),
    });
    if (!resp.ok) throw new ServiceError(resp.status, await resp.text());
    return resp.json();
  }

  selection(session: string): Promise<SelectionJson> {
    return this.get(`/sessions/${session}/selection`);
  }
}
