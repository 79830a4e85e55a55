/** Current Links tab: summary list on the left, live detail on the
 * right, and the metadata population dialog behind Additional Actions. */

import { ApiClient, ApiError } from '../api';
import { clear, h } from '../dom';
import { sanitizeHtml } from '../sanitize';
import type { EndpointDetail, LinkDetail, PopulationReport } from '../types';

export interface CurrentLinksContext {
  api: ApiClient;
}

function endpointCard(endpoint: EndpointDetail): HTMLElement {
  const card = h('div', { className: 'endpoint-card' },
    h('h4', {}, `${endpoint.title_snapshot} `,
      h('small', {}, `(${endpoint.element_type} — ${endpoint.instance_display_name})`)));
  if (endpoint.error) {
    card.append(h('p', { className: 'warning-badge', dataset: { code: endpoint.error.code } },
      `unreachable: ${endpoint.error.message}`));
    return card;
  }
  if (!endpoint.metadata) return card;
  const rows = h('dl', { className: 'extras' });
  for (const [key, extra] of Object.entries(endpoint.metadata.extras)) {
    rows.append(h('dt', {}, key));
    rows.append(h('dd', {}, extra.html ? sanitizeHtml(extra.value) : extra.value));
  }
  card.append(
    h('p', {}, `${endpoint.metadata.type} · ${endpoint.metadata.name} · ${endpoint.metadata.id}`),
    rows,
  );
  return card;
}

function reportView(report: PopulationReport): HTMLElement {
  const box = h('div', { className: 'population-report' },
    h('p', { className: 'report-line' },
      `${report.applied} applied, ${report.overwritten} overwritten, ` +
      `${report.unmatched} unmatched, ${report.ambiguous} ambiguous, ` +
      `${report.failed} failed (of ${report.total_rows} rows)`));
  if (report.diagnostics.length) {
    const list = h('ul', { className: 'diagnostics' });
    for (const diagnostic of report.diagnostics) {
      list.append(h('li', {}, `row ${diagnostic.row}: ${diagnostic.status} — ${diagnostic.detail}`));
    }
    box.append(list);
  }
  return box;
}

async function populationDialog(
  host: HTMLElement,
  detail: LinkDetail,
  ctx: CurrentLinksContext,
): Promise<void> {
  clear(host);
  const { tables } = await ctx.api.linkTables(detail.link_id);

  const tableSelect = h('select', { className: 'table-select' });
  for (const table of tables) {
    const label = table.supported
      ? `table ${table.index + 1}: ${table.row_count} rows (${(table.headers ?? []).slice(0, 3).join(', ')}…)`
      : `table ${table.index + 1}: unsupported — ${table.reason}`;
    tableSelect.append(h('option', {
      value: String(table.index), disabled: !table.supported,
    }, label));
  }

  // only objects already linked, and only datasets/projects, can be targets
  const targets = detail.endpoints.filter(
    (endpoint) => endpoint.element_type === 'Dataset' || endpoint.element_type === 'Project');
  const targetSelect = h('select', { className: 'target-select' });
  for (const target of targets) {
    targetSelect.append(h('option', { value: `${target.instance_id}|${target.origin_id}|${target.element_type}` },
      `${target.title_snapshot} (${target.element_type})`));
  }

  const run = h('button', { className: 'run-population', textContent: 'Populate' });
  const outcome = h('div', { className: 'population-outcome' });
  run.addEventListener('click', async () => {
    clear(outcome);
    const [instanceId, originId, elementType] = targetSelect.value.split('|');
    try {
      const report = await ctx.api.populate(detail.link_id, Number(tableSelect.value), {
        instance_id: instanceId ?? '',
        origin_id: originId ?? '',
        element_type: elementType ?? '',
      });
      outcome.append(reportView(report));
    } catch (error) {
      if (error instanceof ApiError) {
        outcome.append(h('p', { className: 'error', dataset: { code: error.code } },
          `${error.message} (${error.code})`));
        return;
      }
      throw error;
    }
  });

  host.append(
    h('h4', {}, 'Populate metadata from an embedded table'),
    h('label', {}, 'Table ', tableSelect),
    h('label', {}, 'Target ', targetSelect),
    run,
    outcome,
  );
}

export async function renderCurrentLinks(
  container: HTMLElement,
  ctx: CurrentLinksContext,
): Promise<void> {
  clear(container);
  const { links } = await ctx.api.links();
  const listPane = h('ul', { className: 'link-list' });
  const detailPane = h('div', { className: 'link-detail' },
    links.length ? 'Select a link to see its details.' : 'No links yet.');

  const showDetail = async (linkId: string) => {
    clear(detailPane);
    detailPane.append('loading…');
    const detail = await ctx.api.linkDetail(linkId);
    clear(detailPane);
    const cards = h('div', { className: 'endpoint-cards' });
    for (const endpoint of detail.endpoints) cards.append(endpointCard(endpoint));

    const dialog = h('div', { className: 'population-dialog', hidden: true });
    const actions = h('button', { className: 'additional-actions', textContent: 'Additional Actions' });
    actions.addEventListener('click', async () => {
      dialog.hidden = !dialog.hidden;
      if (!dialog.hidden) await populationDialog(dialog, detail, ctx);
    });

    const remove = h('button', { className: 'danger', textContent: 'Delete link' });
    remove.addEventListener('click', async () => {
      await ctx.api.deleteLink(linkId);
      await renderCurrentLinks(container, ctx);
    });

    detailPane.append(
      h('h3', {}, `Link ${detail.link_id}`),
      h('p', {}, `created by ${detail.created_by} at ${detail.created_at}`),
      cards, actions, dialog, remove,
    );
  };

  for (const summary of links) {
    const label = summary.endpoints
      .map((endpoint) => `${endpoint.title_snapshot} (${endpoint.element_type})`)
      .join(' ↔ ');
    const open = h('button', { className: 'link-summary', dataset: { linkId: summary.link_id } },
      label);
    open.addEventListener('click', () => void showDetail(summary.link_id));
    listPane.append(h('li', {}, open,
      h('small', {}, ` ${summary.endpoints.map((e) => e.instance_display_name).join(', ')}`)));
  }

  container.append(
    h('div', { className: 'split' },
      h('div', { className: 'split-left' }, h('h2', {}, 'Current links'), listPane),
      h('div', { className: 'split-right' }, detailPane)),
  );
}
